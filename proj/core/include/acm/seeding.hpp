#pragma once

#include "acm/graph.hpp"
#include "acm/subspace.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace acm {

struct SeedingConfig {
    double pi = 1.0;       // backbone size parameter ("pi percent" of avg difference)
    int min_seed_size = 3; // smallest cohesive part kept as a seed
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (pi <= 0.0) throw ConfigError("pi must be positive");
        if (min_seed_size < 2) throw ConfigError("min_seed_size must be >= 2");
    }
};

/// Edges (by id) whose per-dimension difference is below pi/100 of the
/// mean edge difference on every concerned dimension. When a dimension's
/// mean is 0 the test degenerates to requiring difference exactly 0.
std::vector<int> build_backbone(const AttributedGraph& g, const Subspace& concerned,
                                const SeedingConfig& config);

/// Asynchronous label propagation on the backbone subgraph. Node visit
/// order is shuffled per sweep from rng_seed; each node adopts its most
/// frequent neighbor label, ties broken by smallest label. Stops when a
/// sweep changes nothing or after 100 sweeps. Returns one label per node,
/// -1 for nodes with no backbone edge.
std::vector<int> label_propagation(const AttributedGraph& g, std::span<const int> backbone_edges,
                                   std::uint64_t rng_seed);

/// Label groups of size >= min_seed_size, ordered by descending size then
/// smallest member id; members sorted ascending.
std::vector<std::vector<int>> extract_seeds(std::span<const int> labels,
                                            const SeedingConfig& config);

} // namespace acm
