#include "acm/graph.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace acm;

namespace {

AttributeSchema one_numerical() {
    AttributeSchema s;
    s.dims.push_back({"x", AttrKind::Numerical, {}});
    return s;
}

} // namespace

TEST_CASE("min-max normalization maps observed endpoints to 0 and 1") {
    std::istringstream edges("0 1\n1 2\n");
    std::istringstream nodes("0\t0\n1\t5\n2\t10\n");
    AttributedGraph g = load_graph(edges, nodes, one_numerical());
    CHECK(g.attribute(0, 0) == doctest::Approx(0.0));
    CHECK(g.attribute(1, 0) == doctest::Approx(0.5));
    CHECK(g.attribute(2, 0) == doctest::Approx(1.0));
}

TEST_CASE("self-loops and duplicate edges are dropped with a count") {
    std::istringstream edges("0 0\n0 1\n1 0\n");
    std::istringstream nodes("0\t0\n1\t1\n");
    LoadStats stats;
    AttributedGraph g = load_graph(edges, nodes, one_numerical(), &stats);
    CHECK(stats.self_loops_dropped == 1);
    CHECK(stats.duplicate_edges_dropped == 1);
    CHECK(g.edge_count() == 1);
}

TEST_CASE("arity mismatch between row and schema is reported") {
    AttributeSchema schema;
    schema.dims.push_back({"a", AttrKind::Numerical, {}});
    schema.dims.push_back({"b", AttrKind::Numerical, {}});
    schema.dims.push_back({"c", AttrKind::Numerical, {}});
    std::istringstream edges("");
    std::istringstream nodes("0\t1\t2\n");
    CHECK_THROWS_AS(load_graph(edges, nodes, schema), ParseError);
}

TEST_CASE("edge referencing unknown node is rejected") {
    std::istringstream edges("0 7\n");
    std::istringstream nodes("0\t0\n1\t1\n");
    CHECK_THROWS_AS(load_graph(edges, nodes, one_numerical()), ValidationError);
}

TEST_CASE("categorical value outside declared domain is rejected") {
    AttributeSchema schema;
    schema.dims.push_back({"lang", AttrKind::Categorical, {"en", "fr"}});
    std::istringstream edges("");
    std::istringstream nodes("0\tde\n");
    CHECK_THROWS_AS(load_graph(edges, nodes, schema), ParseError);
}

TEST_CASE("malformed lines report the line number") {
    std::istringstream edges("0 1\nnot an edge\n");
    std::istringstream nodes("0\t0\n1\t1\n");
    try {
        load_graph(edges, nodes, one_numerical());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("attribute_difference per kind") {
    AttributeSchema schema;
    schema.dims.push_back({"num", AttrKind::Numerical, {}});
    schema.dims.push_back({"bin", AttrKind::Binary, {}});
    schema.dims.push_back({"cat", AttrKind::Categorical, {"DB", "DM", "IR"}});

    SUBCASE("categorical: 0 on equal, 1 otherwise") {
        CHECK(attribute_difference(schema, 2, 0, 0) == 0.0);
        CHECK(attribute_difference(schema, 2, 0, 1) == 1.0);
    }
    SUBCASE("binary: 0 only when both have the attribute") {
        CHECK(attribute_difference(schema, 1, 1, 1) == 0.0);
        CHECK(attribute_difference(schema, 1, 0, 0) == 1.0); // literal rule
        CHECK(attribute_difference(schema, 1, 1, 0) == 1.0);
    }
    SUBCASE("binary_absence_similar flag makes (0,0) similar") {
        schema.binary_absence_similar = true;
        CHECK(attribute_difference(schema, 1, 0, 0) == 0.0);
        CHECK(attribute_difference(schema, 1, 1, 0) == 1.0);
    }
    SUBCASE("numerical: plain absolute difference") {
        CHECK(attribute_difference(schema, 0, 0.3, 0.8) == doctest::Approx(0.5));
    }
}

TEST_CASE("attribute_difference is symmetric and bounded, zero on identity "
          "except absent binary") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AttributeSchema schema;
    schema.dims.push_back({"num", AttrKind::Numerical, {}});
    schema.dims.push_back({"bin", AttrKind::Binary, {}});
    schema.dims.push_back({"cat", AttrKind::Categorical, {"x", "y", "z"}});
    for (int trial = 0; trial < 500; ++trial) {
        for (int dim = 0; dim < 3; ++dim) {
            double a, b;
            switch (schema.dims[dim].kind) {
                case AttrKind::Numerical: a = unit(rng); b = unit(rng); break;
                case AttrKind::Binary: a = rng() % 2; b = rng() % 2; break;
                default: a = rng() % 3; b = rng() % 3; break;
            }
            double d = attribute_difference(schema, dim, a, b);
            CHECK(d == attribute_difference(schema, dim, b, a));
            CHECK(d >= 0.0);
            CHECK(d <= 1.0);
            // (0,0) on a binary dim counts as dissimilar under the default rule
            double expected_self =
                (schema.dims[dim].kind == AttrKind::Binary && a == 0.0) ? 1.0 : 0.0;
            CHECK(attribute_difference(schema, dim, a, a) == expected_self);
        }
    }
}

TEST_CASE("serialize -> load is idempotent after the first normalization") {
    std::mt19937_64 rng(42);
    auto reload = [](const AttributedGraph& g) {
        std::ostringstream edges_out, nodes_out, schema_out;
        save_edges(edges_out, g);
        save_nodes(nodes_out, g);
        save_schema(schema_out, g.schema());
        std::istringstream schema_in(schema_out.str());
        AttributeSchema schema = load_schema(schema_in);
        std::istringstream edges_in(edges_out.str()), nodes_in(nodes_out.str());
        return load_graph(edges_in, nodes_in, schema);
    };
    for (int trial = 0; trial < 10; ++trial) {
        // The first load min-max-normalizes numerical dims; every later
        // round trip must reproduce the graph exactly.
        AttributedGraph g = reload(acm::test::random_graph({12, 0.4, 5, true}, rng));
        CHECK(g == reload(g));
    }
}

TEST_CASE("schema validation") {
    AttributeSchema s;
    CHECK_THROWS_AS(s.validate(), ValidationError); // r >= 1
    s.dims.push_back({"a", AttrKind::Numerical, {}});
    s.dims.push_back({"a", AttrKind::Binary, {}});
    CHECK_THROWS_AS(s.validate(), ValidationError); // duplicate names
    s.dims[1].name = "b";
    s.dims.push_back({"c", AttrKind::Categorical, {}});
    CHECK_THROWS_AS(s.validate(), ValidationError); // empty categorical domain
    s.dims[2].domain = {"v"};
    CHECK_NOTHROW(s.validate());
}
