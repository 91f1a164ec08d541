#pragma once

#include "acm/graph.hpp"
#include "acm/local_search.hpp"
#include "acm/seeding.hpp"
#include "acm/subspace.hpp"

#include <span>
#include <vector>

namespace acm {

struct DiversityConfig {
    double beta_c = 0.5; // community Jaccard threshold
    double beta_d = 0.5; // subspace Jaccard threshold

    void validate() const {
        if (beta_c < 0.0 || beta_c > 1.0 || beta_d < 0.0 || beta_d > 1.0)
            throw ConfigError("beta_c and beta_d must lie in [0,1]");
    }
};

struct OrganizationPair {
    std::vector<int> community; // sorted
    Subspace subspace;
    double fitness = 0.0;
};

struct MineStats {
    int backbone_edges = 0;
    int seed_count = 0;
    int visited_skipped = 0;
    int subspace_filtered = 0;
    int capped = 0;
};

struct Organization {
    std::vector<OrganizationPair> pairs;
    MineStats stats;
};

/// Jaccard index of two sorted integer sets; 1 when both are empty.
double jaccard(std::span<const int> a, std::span<const int> b);

/// a is redundant w.r.t. b iff fitness(a) <= fitness(b) and both the
/// community and subspace Jaccard overlaps reach their thresholds.
bool is_redundant(const OrganizationPair& a, const OrganizationPair& b,
                  const DiversityConfig& diversity);

/// Greedy fitness-descending filter keeping only pairs not redundant
/// w.r.t. any already-kept pair. Ties: larger community first, then
/// lexicographic member order.
Organization select_diverse(std::vector<OrganizationPair> pairs,
                            const DiversityConfig& diversity);

struct MineConfig {
    DiversityConfig diversity;
    SeedingConfig seeding;
    KernelConfig kernel;
    LocalSearchConfig search;
    bool parallel = false; // disables the order-dependent visited-nodes shortcut
};

/// Full mining run: backbone, LPA seeds, per-seed convergence from the
/// concerned attributes, concerned-containment filter, visited-node
/// pruning, diverse selection.
Organization mine(const AttributedGraph& g, const Subspace& concerned, const MineConfig& config);

} // namespace acm
