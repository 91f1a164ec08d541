#pragma once

#include "acm/errors.hpp"
#include "acm/graph.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace acm {

/// Non-empty sorted set of attribute dimension indices. The implied
/// per-dimension weight is 1/|dims| inside the subspace and 0 outside.
class Subspace {
public:
    explicit Subspace(std::vector<int> dims);

    int size() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    bool contains(int dim) const;
    bool contains_all(std::span<const int> dims) const;

    Subspace with(int dim) const;    // throws if dim already present
    Subspace without(int dim) const; // throws if absent or size would hit 0

    bool operator==(const Subspace&) const = default;

private:
    std::vector<int> dims_;
};

struct KernelConfig {
    double theta = 1.0; // scaling parameter of the exponential kernel
};

enum class UpdateMode { Add, Remove };

/// Subspace-weighted Euclidean norm with uniform weights:
/// sqrt((1/|D|) * sum_{i in D} diff_i^2).
double subspace_norm(const AttributedGraph& g, int u, int v, const Subspace& subspace);
double subspace_norm(const AttributeSchema& schema, std::span<const double> a,
                     std::span<const double> b, const Subspace& subspace);

/// Constant-time norm update when one dimension enters or leaves the
/// subspace: sqrt((|D|*norm^2 +- diff^2) / |D*|). Tiny negative radicands
/// from float noise are clamped to 0; larger ones signal cache corruption.
/// Inline: this sits in the innermost loop of candidate evaluation.
inline double norm_update(double old_norm, int old_size, double dim_diff, UpdateMode mode) {
    double sq = static_cast<double>(old_size) * old_norm * old_norm;
    int new_size;
    if (mode == UpdateMode::Add) {
        sq += dim_diff * dim_diff;
        new_size = old_size + 1;
    } else {
        if (old_size < 2) throw ConfigError("norm_update remove requires |D| >= 2");
        sq -= dim_diff * dim_diff;
        new_size = old_size - 1;
    }
    if (sq < 0.0) {
        if (sq < -1e-12) throw ValidationError("norm_update: negative radicand, corrupted cache");
        sq = 0.0;
    }
    return std::sqrt(sq / new_size);
}

} // namespace acm
