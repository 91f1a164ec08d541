#include "acm/weighted_view.hpp"

#include <algorithm>
#include <cmath>

namespace acm {

namespace {

// Population variance in deterministic (edge id) order. Norms that are
// equal up to float residue (e.g. rebuilt incrementally) must land in the
// variance==0 branch like their exact counterparts, so residue-level
// variance is snapped to zero.
double population_variance(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size();
    if (var <= 1e-24 * mean * mean) return 0.0;
    return var;
}

// One edge's norm after toggling `dim`, shared by update_view and
// candidate_fitness so both produce identical values.
double updated_edge_norm(const AttributedGraph& g, const WeightedView& base,
                         const Subspace& target, int e, int dim, UpdateMode mode) {
    auto [u, v] = g.edges()[e];
    double diff = attribute_difference(g.schema(), dim, g.attribute(u, dim), g.attribute(v, dim));
    double norm = norm_update(base.edge_norms[e], base.subspace.size(), diff, mode);
    // Near zero the incremental radicand is pure cancellation noise and
    // sqrt blows it up to ~1e-8; recompute those few norms directly.
    if (norm < 1e-6) norm = subspace_norm(g, u, v, target);
    return norm;
}

void finalize_weights(WeightedView& view, const AttributedGraph& g) {
    view.variance = population_variance(view.edge_norms);
    view.effective_scale = view.theta * std::sqrt(view.variance);
    const size_t m = view.edge_norms.size();
    view.edge_weights.resize(m);
    if (view.variance > 0.0) {
        for (size_t e = 0; e < m; ++e)
            view.edge_weights[e] = std::exp(-view.edge_norms[e] / view.effective_scale);
    } else {
        std::fill(view.edge_weights.begin(), view.edge_weights.end(), 1.0);
    }
    view.weighted_degree.assign(g.node_count(), 0.0);
    for (size_t e = 0; e < m; ++e) {
        auto [u, v] = g.edges()[e];
        view.weighted_degree[u] += view.edge_weights[e];
        view.weighted_degree[v] += view.edge_weights[e];
    }
}

} // namespace

WeightedView reweigh(const AttributedGraph& g, const Subspace& subspace,
                     const KernelConfig& config) {
    if (config.theta <= 0.0) throw ConfigError("theta must be positive");
    WeightedView view{subspace, config.theta, {}, 0.0, 0.0, {}, {}};
    view.edge_norms.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        view.edge_norms[e] = subspace_norm(g, u, v, subspace);
    }
    finalize_weights(view, g);
    return view;
}

WeightedView update_view(const WeightedView& view, const AttributedGraph& g, int dim,
                         UpdateMode mode) {
    if (mode == UpdateMode::Add && view.subspace.contains(dim))
        throw ConfigError("update_view add: dimension already in subspace");
    if (mode == UpdateMode::Remove && !view.subspace.contains(dim))
        throw ConfigError("update_view remove: dimension not in subspace");

    WeightedView out{mode == UpdateMode::Add ? view.subspace.with(dim)
                                             : view.subspace.without(dim),
                     view.theta, {}, 0.0, 0.0, {}, {}};
    out.edge_norms.resize(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
        out.edge_norms[e] = updated_edge_norm(g, view, out.subspace, e, dim, mode);
    finalize_weights(out, g);
    return out;
}

void updated_norms(const AttributedGraph& g, const WeightedView& view, int dim, UpdateMode mode,
                   ViewCache* cache, std::vector<double>& out) {
    const Subspace target = mode == UpdateMode::Add ? view.subspace.with(dim)
                                                    : view.subspace.without(dim);
    const int m = g.edge_count();
    out.resize(m);
    std::shared_ptr<const std::vector<double>> dd;
    if (cache) dd = cache->edge_diffs(g, dim);
    if (!dd) {
        for (int e = 0; e < m; ++e)
            out[e] = updated_edge_norm(g, view, target, e, dim, mode);
        return;
    }
    // Branch-free form of norm_update over the whole edge list so the
    // compiler can vectorize; arithmetic is kept identical (same products,
    // same clamp window, same division).
    const double* bn = view.edge_norms.data();
    const double* dv = dd->data();
    const double sz = static_cast<double>(view.subspace.size());
    const double new_sz =
        mode == UpdateMode::Add ? view.subspace.size() + 1 : view.subspace.size() - 1;
    if (mode == UpdateMode::Add) {
        for (int e = 0; e < m; ++e) {
            double sq = sz * bn[e] * bn[e] + dv[e] * dv[e];
            out[e] = std::sqrt(sq / new_sz);
        }
    } else {
        double min_sq = 0.0;
        for (int e = 0; e < m; ++e) {
            double sq = sz * bn[e] * bn[e] - dv[e] * dv[e];
            min_sq = std::min(min_sq, sq);
            out[e] = std::sqrt(std::max(sq, 0.0) / new_sz);
        }
        if (min_sq < -1e-12)
            throw ValidationError("norm_update: negative radicand, corrupted cache");
    }
    // Near zero the incremental radicand is pure cancellation noise and
    // sqrt blows it up to ~1e-8; recompute those few norms directly.
    for (int e = 0; e < m; ++e) {
        if (out[e] < 1e-6) {
            auto [u, v] = g.edges()[e];
            out[e] = subspace_norm(g, u, v, target);
        }
    }
}

void norm_statistics(const std::vector<double>& norms, double theta, double& variance,
                     double& scale) {
    variance = population_variance(norms);
    scale = theta * std::sqrt(variance);
}

WeightedView view_from_norms(const AttributedGraph& g, const Subspace& subspace, double theta,
                             std::vector<double> norms) {
    if (theta <= 0.0) throw ConfigError("theta must be positive");
    if (norms.size() != static_cast<size_t>(g.edge_count()))
        throw ConfigError("view_from_norms: norm count does not match edge count");
    WeightedView view{subspace, theta, std::move(norms), 0.0, 0.0, {}, {}};
    finalize_weights(view, g);
    return view;
}

double fitness_under_norms(const AttributedGraph& g, const CommunityState& community,
                           const std::vector<double>& norms, double variance, double scale) {
    double invol = 0.0, vol = 0.0;
    for (int v : community.members()) {
        auto nbrs = g.neighbors(v);
        auto eids = g.incident_edges(v);
        for (size_t k = 0; k < nbrs.size(); ++k) {
            double w = variance > 0.0 ? std::exp(-norms[eids[k]] / scale) : 1.0;
            vol += w;
            if (community.contains(nbrs[k])) invol += w;
        }
    }
    return vol > 0.0 ? invol / vol : 0.0;
}

std::shared_ptr<const WeightedView> ViewCache::find(const std::vector<int>& dims) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = views_.find(dims);
    return it == views_.end() ? nullptr : it->second;
}

std::shared_ptr<const WeightedView> ViewCache::insert(std::shared_ptr<const WeightedView> view) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = views_.find(view->subspace.dims());
    if (it != views_.end()) return it->second;
    if (views_.size() >= max_entries_) return view;
    views_.emplace(view->subspace.dims(), view);
    return view;
}

bool ViewCache::find_stats(const std::vector<int>& dims, double& variance, double& scale) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = stats_.find(dims);
    if (it == stats_.end()) return false;
    variance = it->second.first;
    scale = it->second.second;
    return true;
}

void ViewCache::insert_stats(const std::vector<int>& dims, double variance, double scale) {
    std::lock_guard<std::mutex> lock(mutex_);
    stats_.emplace(dims, std::make_pair(variance, scale));
}

std::shared_ptr<const std::vector<double>> ViewCache::edge_diffs(const AttributedGraph& g,
                                                                 int dim) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = diffs_.find(dim);
        if (it != diffs_.end()) return it->second;
    }
    auto diffs = std::make_shared<std::vector<double>>(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges()[e];
        (*diffs)[e] =
            attribute_difference(g.schema(), dim, g.attribute(u, dim), g.attribute(v, dim));
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return diffs_.emplace(dim, std::move(diffs)).first->second;
}

CommunityState CommunityState::from_members(const AttributedGraph& g, const WeightedView& view,
                                            std::span<const int> members) {
    if (members.empty()) throw ConfigError("community must be non-empty");
    CommunityState c;
    c.in_.assign(g.node_count(), 0);
    c.members_.assign(members.begin(), members.end());
    std::sort(c.members_.begin(), c.members_.end());
    c.members_.erase(std::unique(c.members_.begin(), c.members_.end()), c.members_.end());
    for (int v : c.members_) c.in_[v] = 1;
    c.rebind(g, view);
    return c;
}

void CommunityState::rebind(const AttributedGraph& g, const WeightedView& view) {
    invol_ = 0.0;
    vol_ = 0.0;
    for (int v : members_) {
        vol_ += view.weighted_degree[v];
        auto nbrs = g.neighbors(v);
        auto eids = g.incident_edges(v);
        for (size_t k = 0; k < nbrs.size(); ++k)
            if (in_[nbrs[k]]) invol_ += view.weight(eids[k]);
    }
    // The loop above visits each internal edge once from each endpoint,
    // matching the matrix-sum double counting.
}

double CommunityState::internal_weighted_degree(const AttributedGraph& g,
                                                const WeightedView& view, int v) const {
    double wd_in = 0.0;
    auto nbrs = g.neighbors(v);
    auto eids = g.incident_edges(v);
    for (size_t k = 0; k < nbrs.size(); ++k)
        if (in_[nbrs[k]]) wd_in += view.weight(eids[k]);
    return wd_in;
}

void CommunityState::add(const AttributedGraph& g, const WeightedView& view, int v) {
    if (in_[v]) throw ConfigError("add: node already in community");
    invol_ += 2.0 * internal_weighted_degree(g, view, v);
    vol_ += view.weighted_degree[v];
    in_[v] = 1;
    members_.insert(std::lower_bound(members_.begin(), members_.end(), v), v);
}

void CommunityState::remove(const AttributedGraph& g, const WeightedView& view, int v) {
    if (!in_[v]) throw ConfigError("remove: node not in community");
    if (size() < 2) throw ConfigError("remove: cannot empty the community");
    in_[v] = 0;
    invol_ -= 2.0 * internal_weighted_degree(g, view, v);
    vol_ -= view.weighted_degree[v];
    members_.erase(std::lower_bound(members_.begin(), members_.end(), v));
}

double subspace_fitness(const CommunityState& community) {
    return community.vol() > 0.0 ? community.invol() / community.vol() : 0.0;
}

double fitness_of(const AttributedGraph& g, const WeightedView& view,
                  std::span<const int> members) {
    return subspace_fitness(CommunityState::from_members(g, view, members));
}

double fitness_delta_node(const AttributedGraph& g, const WeightedView& view,
                          const CommunityState& community, int v, UpdateMode mode) {
    double wd_in = community.internal_weighted_degree(g, view, v);
    double wd = view.weighted_degree[v];
    double invol, vol;
    if (mode == UpdateMode::Add) {
        if (community.contains(v)) throw ConfigError("fitness delta add: node already inside");
        invol = community.invol() + 2.0 * wd_in;
        vol = community.vol() + wd;
    } else {
        if (!community.contains(v)) throw ConfigError("fitness delta remove: node not inside");
        if (community.size() < 2)
            throw ConfigError("fitness delta remove: community size must be >= 2");
        invol = community.invol() - 2.0 * wd_in;
        vol = community.vol() - wd;
    }
    double fit_new = vol > 0.0 ? invol / vol : 0.0;
    return fit_new - subspace_fitness(community);
}

double candidate_fitness(const AttributedGraph& g, const WeightedView& base, int dim,
                         UpdateMode mode, const CommunityState& community, ViewCache* cache,
                         std::vector<double>& scratch) {
    const Subspace target = mode == UpdateMode::Add ? base.subspace.with(dim)
                                                    : base.subspace.without(dim);
    const int old_size = base.subspace.size();

    double variance = 0.0, scale = 0.0;
    if (cache && cache->find_stats(target.dims(), variance, scale)) {
        // Stats already known: evaluate only the community's incident
        // edges, deriving each norm lazily from the base view.
        auto dd = cache->edge_diffs(g, dim);
        double invol = 0.0, vol = 0.0;
        for (int v : community.members()) {
            auto nbrs = g.neighbors(v);
            auto eids = g.incident_edges(v);
            for (size_t k = 0; k < nbrs.size(); ++k) {
                int e = eids[k];
                double norm = norm_update(base.edge_norms[e], old_size, (*dd)[e], mode);
                if (norm < 1e-6) {
                    auto [eu, ev] = g.edges()[e];
                    norm = subspace_norm(g, eu, ev, target);
                }
                double w = variance > 0.0 ? std::exp(-norm / scale) : 1.0;
                vol += w;
                if (community.contains(nbrs[k])) invol += w;
            }
        }
        return vol > 0.0 ? invol / vol : 0.0;
    }

    updated_norms(g, base, dim, mode, cache, scratch);
    variance = population_variance(scratch);
    scale = base.theta * std::sqrt(variance);
    if (cache) cache->insert_stats(target.dims(), variance, scale);
    return fitness_under_norms(g, community, scratch, variance, scale);
}

} // namespace acm
