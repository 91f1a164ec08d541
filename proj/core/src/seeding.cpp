#include "acm/seeding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace acm {

std::vector<int> build_backbone(const AttributedGraph& g, const Subspace& concerned,
                                const SeedingConfig& config) {
    config.validate();
    const int m = g.edge_count();
    const auto& schema = g.schema();

    // Per concerned dimension: mean difference over all edges.
    std::vector<double> avg(concerned.size(), 0.0);
    std::vector<std::vector<double>> diffs(concerned.size(), std::vector<double>(m));
    for (int k = 0; k < concerned.size(); ++k) {
        int dim = concerned.dims()[k];
        double sum = 0.0;
        for (int e = 0; e < m; ++e) {
            auto [u, v] = g.edges()[e];
            double d = attribute_difference(schema, dim, g.attribute(u, dim), g.attribute(v, dim));
            diffs[k][e] = d;
            sum += d;
        }
        avg[k] = m > 0 ? sum / m : 0.0;
    }

    std::vector<int> kept;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int k = 0; k < concerned.size() && ok; ++k) {
            if (avg[k] == 0.0)
                ok = diffs[k][e] == 0.0;
            else
                ok = diffs[k][e] < (config.pi / 100.0) * avg[k];
        }
        if (ok) kept.push_back(e);
    }
    return kept;
}

std::vector<int> label_propagation(const AttributedGraph& g, std::span<const int> backbone_edges,
                                   std::uint64_t rng_seed) {
    const int n = g.node_count();
    std::vector<std::vector<int>> adj(n);
    for (int e : backbone_edges) {
        auto [u, v] = g.edges()[e];
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    std::vector<int> labels(n, -1);
    std::vector<int> covered;
    for (int v = 0; v < n; ++v) {
        if (!adj[v].empty()) {
            labels[v] = v;
            covered.push_back(v);
        }
    }

    std::mt19937_64 rng(rng_seed);
    std::map<int, int> counts;
    for (int sweep = 0; sweep < 100; ++sweep) {
        std::shuffle(covered.begin(), covered.end(), rng);
        bool changed = false;
        for (int v : covered) {
            counts.clear();
            for (int u : adj[v]) ++counts[labels[u]];
            int best_label = labels[v];
            int best_count = 0;
            for (auto [label, count] : counts) { // ascending label: smallest wins ties
                if (count > best_count) {
                    best_count = count;
                    best_label = label;
                }
            }
            if (best_label != labels[v]) {
                labels[v] = best_label;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return labels;
}

std::vector<std::vector<int>> extract_seeds(std::span<const int> labels,
                                            const SeedingConfig& config) {
    config.validate();
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < static_cast<int>(labels.size()); ++v)
        if (labels[v] >= 0) groups[labels[v]].push_back(v);

    std::vector<std::vector<int>> seeds;
    for (auto& [label, members] : groups) {
        if (static_cast<int>(members.size()) >= config.min_seed_size)
            seeds.push_back(std::move(members)); // already ascending by construction
    }
    std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return seeds;
}

} // namespace acm
