#pragma once

#include "acm/graph.hpp"
#include "acm/subspace.hpp"
#include "acm/weighted_view.hpp"

#include <span>
#include <utility>
#include <vector>

namespace acm {

struct LocalSearchConfig {
    int max_alternations = 50; // outer community/subspace alternation cap
};

struct AdjustOutcome {
    std::vector<int> community; // sorted
    Subspace subspace;
    double fitness = 0.0;
    int iterations = 0; // outer alternations performed
    bool capped = false;
};

/// Greedy hill climbing over single-node actions. Repeatedly applies the
/// add/remove with the largest strictly positive fitness delta (ties:
/// removals before additions, then smallest node id) until none improves.
/// Returns true if the community changed.
bool adjust_community(const AttributedGraph& g, const WeightedView& view,
                      CommunityState& community);

/// Greedy hill climbing over single-dimension actions, rebuilding a
/// candidate view per action via update_view (or pulling it from `cache`
/// when one is supplied). On application the community cache is rebound to
/// the new view. Returns true if the subspace changed.
bool adjust_subspace(const AttributedGraph& g, WeightedView& view, CommunityState& community,
                     ViewCache* cache = nullptr);

/// Alternates the two procedures until a full alternation changes neither
/// the community nor the subspace, or the alternation cap trips.
AdjustOutcome converge_pair(const AttributedGraph& g, std::span<const int> seed,
                            const Subspace& initial_subspace, const KernelConfig& kernel = {},
                            const LocalSearchConfig& config = {}, ViewCache* cache = nullptr);

} // namespace acm
