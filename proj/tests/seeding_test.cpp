#include "acm/seeding.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace acm;

namespace {

AttributedGraph numeric_graph(int n, std::vector<std::pair<int, int>> edges,
                              std::vector<double> values) {
    AttributeSchema schema;
    schema.dims.push_back({"x", AttrKind::Numerical, {}});
    return AttributedGraph::build(n, std::move(edges), std::move(values), std::move(schema));
}

std::vector<std::pair<int, int>> clique_edges(std::vector<int> nodes) {
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (size_t j = i + 1; j < nodes.size(); ++j) edges.emplace_back(nodes[i], nodes[j]);
    return edges;
}

} // namespace

TEST_CASE("backbone: identical concerned values keep every edge") {
    AttributedGraph g = numeric_graph(4, {{0, 1}, {1, 2}, {2, 3}}, {0.5, 0.5, 0.5, 0.5});
    auto backbone = build_backbone(g, Subspace({0}), {});
    CHECK(backbone.size() == 3);
}

TEST_CASE("backbone: path with diffs {0,1} and pi=1 keeps only the zero-diff edge") {
    // avg = 0.5, threshold 0.005
    AttributedGraph g = numeric_graph(3, {{0, 1}, {1, 2}}, {0.0, 0.0, 1.0});
    auto backbone = build_backbone(g, Subspace({0}), {});
    REQUIRE(backbone.size() == 1);
    CHECK(g.edges()[backbone[0]] == std::pair<int, int>{0, 1});
}

TEST_CASE("backbone: above-average edges are excluded for any pi <= 100") {
    AttributedGraph g = numeric_graph(4, {{0, 1}, {1, 2}, {2, 3}}, {0.0, 0.1, 0.2, 1.0});
    // diffs {0.1, 0.1, 0.8}; the 0.8 edge exceeds the average 1/3
    for (double pi : {1.0, 50.0, 100.0}) {
        SeedingConfig cfg;
        cfg.pi = pi;
        auto backbone = build_backbone(g, Subspace({0}), cfg);
        for (int e : backbone) CHECK(g.edges()[e] != std::pair<int, int>{2, 3});
    }
}

TEST_CASE("backbone threshold test holds for every kept edge") {
    std::mt19937_64 rng(13);
    AttributedGraph g = acm::test::random_graph({40, 0.15, 4, true}, rng);
    SeedingConfig cfg;
    cfg.pi = 60.0;
    Subspace concerned({0, 1});
    auto backbone = build_backbone(g, concerned, cfg);
    // recompute the averages independently
    for (int k = 0; k < concerned.size(); ++k) {
        int dim = concerned.dims()[k];
        double avg = 0.0;
        for (auto [u, v] : g.edges())
            avg += attribute_difference(g.schema(), dim, g.attribute(u, dim), g.attribute(v, dim));
        avg /= g.edge_count();
        for (int e : backbone) {
            auto [u, v] = g.edges()[e];
            double d = attribute_difference(g.schema(), dim, g.attribute(u, dim), g.attribute(v, dim));
            if (avg == 0.0) CHECK(d == 0.0);
            else CHECK(d < (cfg.pi / 100.0) * avg);
        }
    }
}

TEST_CASE("label propagation: a 5-clique converges to one label") {
    auto edges = clique_edges({0, 1, 2, 3, 4});
    AttributedGraph g = numeric_graph(5, std::move(edges), std::vector<double>(5, 0.0));
    std::vector<int> all_edges(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) all_edges[e] = e;
    auto labels = label_propagation(g, all_edges, 1);
    for (int v = 1; v < 5; ++v) CHECK(labels[v] == labels[0]);
}

TEST_CASE("label propagation: two 6-cliques joined by a bridge get two labels") {
    auto edges = clique_edges({0, 1, 2, 3, 4, 5});
    auto right = clique_edges({6, 7, 8, 9, 10, 11});
    edges.insert(edges.end(), right.begin(), right.end());
    edges.emplace_back(5, 6);
    AttributedGraph g = numeric_graph(12, std::move(edges), std::vector<double>(12, 0.0));
    std::vector<int> all_edges(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) all_edges[e] = e;
    auto labels = label_propagation(g, all_edges, 7);
    for (int v = 1; v < 6; ++v) CHECK(labels[v] == labels[0]);
    for (int v = 7; v < 12; ++v) CHECK(labels[v] == labels[6]);
    CHECK(labels[0] != labels[6]);
}

TEST_CASE("label propagation: empty backbone yields an empty partition") {
    AttributedGraph g = numeric_graph(4, {{0, 1}}, std::vector<double>(4, 0.0));
    auto labels = label_propagation(g, {}, 1);
    for (int v = 0; v < 4; ++v) CHECK(labels[v] == -1);
}

TEST_CASE("label propagation is deterministic for a fixed seed") {
    std::mt19937_64 rng(19);
    AttributedGraph g = acm::test::random_graph({60, 0.1, 2, false}, rng);
    std::vector<int> all_edges(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) all_edges[e] = e;
    CHECK(label_propagation(g, all_edges, 42) == label_propagation(g, all_edges, 42));
}

TEST_CASE("extract_seeds filters, orders, and keeps seeds disjoint") {
    SeedingConfig cfg;
    cfg.min_seed_size = 3;

    SUBCASE("size threshold") {
        std::vector<int> labels{1, 1, 1, 2, -1};
        auto seeds = extract_seeds(labels, cfg);
        REQUIRE(seeds.size() == 1);
        CHECK(seeds[0] == std::vector<int>{0, 1, 2});
    }
    SUBCASE("empty partition") {
        std::vector<int> labels{-1, -1};
        CHECK(extract_seeds(labels, cfg).empty());
    }
    SUBCASE("descending size order") {
        // sizes 5 and 8
        std::vector<int> labels(13);
        for (int v = 0; v < 5; ++v) labels[v] = 100;
        for (int v = 5; v < 13; ++v) labels[v] = 7;
        auto seeds = extract_seeds(labels, cfg);
        REQUIRE(seeds.size() == 2);
        CHECK(seeds[0].size() == 8);
        CHECK(seeds[1].size() == 5);
    }
    SUBCASE("disjoint and above threshold") {
        std::mt19937_64 rng(3);
        std::vector<int> labels(50);
        for (auto& l : labels) l = static_cast<int>(rng() % 7);
        auto seeds = extract_seeds(labels, cfg);
        std::vector<char> seen(50, 0);
        for (const auto& s : seeds) {
            CHECK(static_cast<int>(s.size()) >= cfg.min_seed_size);
            for (int v : s) {
                CHECK(!seen[v]);
                seen[v] = 1;
            }
        }
    }
}
