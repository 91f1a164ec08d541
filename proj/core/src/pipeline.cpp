#include "acm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace acm {

double jaccard(std::span<const int> a, std::span<const int> b) {
    size_t i = 0, j = 0, isect = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++isect; ++i; ++j; }
    }
    size_t uni = a.size() + b.size() - isect;
    return uni == 0 ? 1.0 : static_cast<double>(isect) / uni;
}

bool is_redundant(const OrganizationPair& a, const OrganizationPair& b,
                  const DiversityConfig& diversity) {
    return a.fitness <= b.fitness &&
           jaccard(a.community, b.community) >= diversity.beta_c &&
           jaccard(a.subspace.dims(), b.subspace.dims()) >= diversity.beta_d;
}

Organization select_diverse(std::vector<OrganizationPair> pairs,
                            const DiversityConfig& diversity) {
    diversity.validate();
    std::sort(pairs.begin(), pairs.end(), [](const OrganizationPair& a, const OrganizationPair& b) {
        if (a.fitness != b.fitness) return a.fitness > b.fitness;
        if (a.community.size() != b.community.size()) return a.community.size() > b.community.size();
        return a.community < b.community;
    });
    Organization out;
    for (auto& p : pairs) {
        bool redundant = false;
        for (const auto& kept : out.pairs) {
            if (is_redundant(p, kept, diversity)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) out.pairs.push_back(std::move(p));
    }
    return out;
}

namespace {

struct SeedResult {
    bool produced = false;
    bool capped = false;
    bool filtered = false;
    OrganizationPair pair{{}, Subspace({0}), 0.0};
};

SeedResult process_seed(const AttributedGraph& g, std::span<const int> seed,
                        const Subspace& concerned, const MineConfig& config, ViewCache& cache) {
    SeedResult res;
    AdjustOutcome outcome =
        converge_pair(g, seed, concerned, config.kernel, config.search, &cache);
    res.capped = outcome.capped;
    if (!outcome.subspace.contains_all(concerned.dims())) {
        res.filtered = true;
        return res;
    }
    res.produced = true;
    res.pair = OrganizationPair{std::move(outcome.community), std::move(outcome.subspace),
                                outcome.fitness};
    return res;
}

} // namespace

Organization mine(const AttributedGraph& g, const Subspace& concerned, const MineConfig& config) {
    config.diversity.validate();
    config.seeding.validate();
    for (int d : concerned.dims())
        if (d >= g.attr_count()) throw ConfigError("concerned dimension out of schema range");

    MineStats stats;
    std::vector<int> backbone = build_backbone(g, concerned, config.seeding);
    stats.backbone_edges = static_cast<int>(backbone.size());
    std::vector<int> labels = label_propagation(g, backbone, config.seeding.rng_seed);
    std::vector<std::vector<int>> seeds = extract_seeds(labels, config.seeding);
    stats.seed_count = static_cast<int>(seeds.size());

    std::vector<OrganizationPair> candidates;
    ViewCache cache; // shared across seeds; candidate subspaces repeat heavily

    if (!config.parallel) {
        std::vector<char> visited(g.node_count(), 0);
        for (const auto& seed : seeds) {
            bool all_visited = std::all_of(seed.begin(), seed.end(),
                                           [&](int v) { return visited[v] != 0; });
            if (all_visited) {
                ++stats.visited_skipped;
                continue;
            }
            SeedResult res = process_seed(g, seed, concerned, config, cache);
            if (res.capped) ++stats.capped;
            if (res.filtered) ++stats.subspace_filtered;
            if (!res.produced) continue;
            for (int v : res.pair.community) visited[v] = 1;
            candidates.push_back(std::move(res.pair));
        }
    } else {
        // Visited-nodes pruning is order dependent; in parallel mode every
        // seed is processed and de-duplication is left to select_diverse.
        std::vector<SeedResult> results(seeds.size());
        std::atomic<size_t> next{0};
        unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < seeds.size(); i = next.fetch_add(1))
                    results[i] = process_seed(g, seeds[i], concerned, config, cache);
            });
        }
        for (auto& t : pool) t.join();
        for (auto& res : results) {
            if (res.capped) ++stats.capped;
            if (res.filtered) ++stats.subspace_filtered;
            if (res.produced) candidates.push_back(std::move(res.pair));
        }
    }

    Organization out = select_diverse(std::move(candidates), config.diversity);
    out.stats = stats;
    return out;
}

} // namespace acm
