#pragma once

#include "acm/graph.hpp"
#include "acm/subspace.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace acm {

/// LFR-style attributed benchmark parameters. Degrees and community sizes
/// follow truncated power laws; each node keeps a fraction 1-mu of its
/// edges inside its own community. Attributes are planted per community in
/// a random size-t subspace with similarity probability p.
struct BenchmarkParams {
    double tau1 = 2.0; // degree exponent
    double tau2 = 1.0; // community size exponent
    int n = 5000;
    double d_avg = 30.0;
    int d_max = 100;
    int c_min = 40;
    int c_max = 0; // 0 means 2 * c_min
    double mu = 0.2;
    int r = 20;
    int t = 6;
    double p = 0.9;
    AttrKind type = AttrKind::Numerical;
    std::uint64_t rng_seed = 0;

    // Attribute sampling knobs (the "similar value" stand-ins).
    double numeric_band = 0.05;        // half-width around the community center
    double binary_background_p = 0.2;  // Bernoulli rate of background 1s
    int categorical_domain_size = 10;

    int resolved_c_max() const { return c_max > 0 ? c_max : 2 * c_min; }
    void validate() const;
};

struct GroundTruth {
    std::vector<std::vector<int>> communities; // disjoint, sorted members
    std::vector<std::vector<int>> subspaces;   // size-t sorted dims, parallel to communities
};

struct Benchmark {
    AttributedGraph graph;
    GroundTruth truth;
    int degree_adjustments = 0; // +-1 fixes applied for feasibility/parity
    int dropped_stubs = 0;      // unmatched stubs discarded during wiring
};

Benchmark generate(const BenchmarkParams& params);

/// Attribute matrix (row-major n x r). Chooses a random size-t subspace
/// per community when truth.subspaces is empty (filling it in); subspace
/// dims get the planted value with probability p, everything else is
/// background noise.
std::vector<double> attach_attributes(int n, GroundTruth& truth, const BenchmarkParams& params,
                                      std::mt19937_64& rng);

/// Picks one ground-truth community uniformly, then k dims uniformly from
/// its subspace, so the ground-truth organization of the result is never
/// empty.
Subspace pick_concerned(const GroundTruth& truth, int k, std::uint64_t rng_seed);

// Ground-truth file: one line per community, "member ids | subspace dims".
void save_ground_truth(std::ostream& out, const GroundTruth& truth);
GroundTruth load_ground_truth(std::istream& in);

} // namespace acm
