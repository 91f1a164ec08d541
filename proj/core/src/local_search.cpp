#include "acm/local_search.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace acm {

bool adjust_community(const AttributedGraph& g, const WeightedView& view,
                      CommunityState& community) {
    bool changed = false;
    for (;;) {
        double best_delta = 0.0;
        int best_node = -1;
        UpdateMode best_mode = UpdateMode::Remove;

        // Removals first, ascending node id. Requires |C| >= 2.
        if (community.size() >= 2) {
            for (int v : community.members()) {
                double d = fitness_delta_node(g, view, community, v, UpdateMode::Remove);
                if (d > best_delta) {
                    best_delta = d;
                    best_node = v;
                    best_mode = UpdateMode::Remove;
                }
            }
        }

        // Additions: neighbors of the community, ascending node id.
        std::vector<int> boundary;
        for (int v : community.members())
            for (int u : g.neighbors(v))
                if (!community.contains(u)) boundary.push_back(u);
        std::sort(boundary.begin(), boundary.end());
        boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
        for (int v : boundary) {
            double d = fitness_delta_node(g, view, community, v, UpdateMode::Add);
            if (d > best_delta) {
                best_delta = d;
                best_node = v;
                best_mode = UpdateMode::Add;
            }
        }

        if (best_node < 0) break;
        if (best_mode == UpdateMode::Remove)
            community.remove(g, view, best_node);
        else
            community.add(g, view, best_node);
        changed = true;
    }
    return changed;
}

bool adjust_subspace(const AttributedGraph& g, WeightedView& view, CommunityState& community,
                     ViewCache* cache) {
    const int r = g.attr_count();
    bool changed = false;
    // Accepted intermediate subspaces only need edge norms and kernel
    // stats for the next candidate round; the O(m) weight/degree build is
    // deferred until the ascent settles, and `partial` marks a view whose
    // weight arrays are stale.
    bool partial = false;
    std::vector<double> scratch;
    // Exact ascent can never revisit a subspace (the community is fixed
    // here and fitness strictly increases), so a repeat can only be float
    // noise around a tie; stop instead of cycling.
    std::set<std::vector<int>> seen{view.subspace.dims()};
    for (;;) {
        double current = fitness_under_norms(g, community, view.edge_norms, view.variance,
                                             view.effective_scale);
        double best_delta = 0.0;
        int best_dim = -1;
        UpdateMode best_mode = UpdateMode::Add;

        auto consider = [&](int dim, UpdateMode mode) {
            double f = candidate_fitness(g, view, dim, mode, community, cache, scratch);
            double delta = f - current;
            if (delta > best_delta) {
                best_delta = delta;
                best_dim = dim;
                best_mode = mode;
            }
        };

        // Removals first, ascending dimension index.
        if (view.subspace.size() >= 2)
            for (int i : view.subspace.dims()) consider(i, UpdateMode::Remove);
        for (int i = 0; i < r; ++i)
            if (!view.subspace.contains(i)) consider(i, UpdateMode::Add);

        if (best_dim < 0) break;
        Subspace target = best_mode == UpdateMode::Add ? view.subspace.with(best_dim)
                                                       : view.subspace.without(best_dim);
        if (!seen.insert(target.dims()).second) break;
        std::shared_ptr<const WeightedView> next;
        if (cache) next = cache->find(target.dims());
        if (next) {
            view = *next;
            partial = false;
        } else {
            updated_norms(g, view, best_dim, best_mode, cache, scratch);
            view.edge_norms.swap(scratch);
            view.subspace = std::move(target);
            double variance, scale;
            // candidate_fitness caches these on evaluation; recompute only
            // when running cache-less.
            if (!cache || !cache->find_stats(view.subspace.dims(), variance, scale))
                norm_statistics(view.edge_norms, view.theta, variance, scale);
            view.variance = variance;
            view.effective_scale = scale;
            partial = true;
        }
        changed = true;
    }
    if (partial) {
        view = view_from_norms(g, view.subspace, view.theta, std::move(view.edge_norms));
        if (cache) cache->insert(std::make_shared<const WeightedView>(view));
    }
    if (changed) community.rebind(g, view);
    return changed;
}

AdjustOutcome converge_pair(const AttributedGraph& g, std::span<const int> seed,
                            const Subspace& initial_subspace, const KernelConfig& kernel,
                            const LocalSearchConfig& config, ViewCache* cache) {
    if (seed.empty()) throw ConfigError("converge_pair: empty seed");

    std::shared_ptr<const WeightedView> initial;
    if (cache) initial = cache->find(initial_subspace.dims());
    if (!initial) {
        initial = std::make_shared<const WeightedView>(reweigh(g, initial_subspace, kernel));
        if (cache) initial = cache->insert(initial);
    }
    WeightedView view = *initial;
    CommunityState community = CommunityState::from_members(g, view, seed);

    AdjustOutcome out{{}, initial_subspace, 0.0, 0, false};
    for (out.iterations = 1; out.iterations <= config.max_alternations; ++out.iterations) {
        bool c_changed = adjust_community(g, view, community);
        bool d_changed = adjust_subspace(g, view, community, cache);
        if (!c_changed && !d_changed) break;
        if (out.iterations == config.max_alternations) {
            out.capped = true;
            break;
        }
    }
    out.community = community.members();
    out.subspace = view.subspace;
    out.fitness = subspace_fitness(community);
    return out;
}

} // namespace acm
