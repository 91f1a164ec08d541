#pragma once

#include "acm/graph.hpp"
#include "acm/subspace.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace acm {

/// Kernel-reweighted view of the graph under one subspace. Per-edge norms
/// are cached so that adding/removing a dimension costs O(m). Immutable
/// between updates; shareable for concurrent reads.
struct WeightedView {
    Subspace subspace;
    double theta = 1.0;
    std::vector<double> edge_norms;      // one per undirected edge
    double variance = 0.0;               // population variance of edge_norms
    double effective_scale = 0.0;        // theta * sqrt(variance)
    std::vector<double> edge_weights;    // exp(-norm/scale), or 1 if variance == 0
    std::vector<double> weighted_degree; // per node, sum of incident edge weights

    double weight(int edge_id) const { return edge_weights[edge_id]; }
};

WeightedView reweigh(const AttributedGraph& g, const Subspace& subspace,
                     const KernelConfig& config = {});

/// O(m) incremental rebuild after one dimension enters or leaves the
/// subspace. Equals reweigh on the updated subspace within 1e-9.
WeightedView update_view(const WeightedView& view, const AttributedGraph& g, int dim,
                         UpdateMode mode);

class ViewCache;
class CommunityState;

/// Edge norms after toggling one dimension on `view.subspace`, written into
/// `out`; same arithmetic as update_view. Uses the cache's per-dimension
/// diff arrays when available.
void updated_norms(const AttributedGraph& g, const WeightedView& view, int dim, UpdateMode mode,
                   ViewCache* cache, std::vector<double>& out);

/// Population variance and kernel scale (theta * sqrt(variance)) of an
/// edge-norm set; residue-level variance snaps to 0 exactly as in reweigh.
void norm_statistics(const std::vector<double>& norms, double theta, double& variance,
                     double& scale);

/// Full view (weights, weighted degrees, stats) assembled from precomputed
/// edge norms. Equivalent to reweigh when the norms are exact.
WeightedView view_from_norms(const AttributedGraph& g, const Subspace& subspace, double theta,
                             std::vector<double> norms);

/// Community fitness under given edge norms and kernel stats, without
/// materializing the full view: O(sum of member degrees).
double fitness_under_norms(const AttributedGraph& g, const CommunityState& community,
                           const std::vector<double>& norms, double variance, double scale);

/// Thread-safe memo of views keyed by subspace. Candidate subspaces repeat
/// heavily across seeds during mining, so sharing one cache per run drops
/// the dominant O(seeds * r * m) reweighing cost. Insertion stops at a soft
/// size cap; lookups keep working.
class ViewCache {
public:
    explicit ViewCache(size_t max_entries = 512) : max_entries_(max_entries) {}

    std::shared_ptr<const WeightedView> find(const std::vector<int>& dims) const;
    /// Stores the view unless the cap is hit or the key exists; either way
    /// returns the cached entry for this subspace (or the argument itself).
    std::shared_ptr<const WeightedView> insert(std::shared_ptr<const WeightedView> view);

    /// Norm variance/scale per subspace — a few bytes per entry, so these
    /// are kept without a cap. Valid for one (graph, theta) combination.
    bool find_stats(const std::vector<int>& dims, double& variance, double& scale) const;
    void insert_stats(const std::vector<int>& dims, double variance, double scale);

    /// Per-dimension edge attribute differences, computed once on demand.
    std::shared_ptr<const std::vector<double>> edge_diffs(const AttributedGraph& g, int dim);

private:
    size_t max_entries_;
    mutable std::mutex mutex_;
    std::map<std::vector<int>, std::shared_ptr<const WeightedView>> views_;
    std::map<std::vector<int>, std::pair<double, double>> stats_;
    std::map<int, std::shared_ptr<const std::vector<double>>> diffs_;
};

/// Community node set with cached matrix-sum accounting: invol counts each
/// internal edge twice, vol is the sum of member weighted degrees.
class CommunityState {
public:
    static CommunityState from_members(const AttributedGraph& g, const WeightedView& view,
                                       std::span<const int> members);

    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int v) const { return in_[v] != 0; }
    const std::vector<int>& members() const { return members_; } // sorted

    double invol() const { return invol_; }
    double vol() const { return vol_; }

    /// wd_v^in: total weight of edges between v and members other than v.
    double internal_weighted_degree(const AttributedGraph& g, const WeightedView& view,
                                    int v) const;

    void add(const AttributedGraph& g, const WeightedView& view, int v);
    void remove(const AttributedGraph& g, const WeightedView& view, int v);

    /// Recompute cached sums against a different view of the same graph.
    void rebind(const AttributedGraph& g, const WeightedView& view);

private:
    std::vector<int> members_;
    std::vector<char> in_;
    double invol_ = 0.0;
    double vol_ = 0.0;
};

/// Eq-style fitness invol/vol; 0 when vol == 0.
double subspace_fitness(const CommunityState& community);

/// Fitness of an arbitrary member set under a view, computed from scratch.
double fitness_of(const AttributedGraph& g, const WeightedView& view,
                  std::span<const int> members);

/// Incremental fitness change of adding/removing one node, O(deg(v)).
/// Add requires v outside the community; remove requires v inside and
/// community size >= 2.
double fitness_delta_node(const AttributedGraph& g, const WeightedView& view,
                          const CommunityState& community, int v, UpdateMode mode);

/// Fitness the community would have after toggling one subspace dimension,
/// without materializing the candidate view: one cheap pass for the norm
/// statistics (skipped entirely on a stats-cache hit) plus kernel weights
/// for the community's incident edges only. `scratch` is a caller-owned
/// norm buffer reused across calls to avoid reallocation.
double candidate_fitness(const AttributedGraph& g, const WeightedView& base, int dim,
                         UpdateMode mode, const CommunityState& community, ViewCache* cache,
                         std::vector<double>& scratch);

} // namespace acm
