#include "acm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace acm {

const char* to_string(AttrKind kind) {
    switch (kind) {
        case AttrKind::Numerical: return "numerical";
        case AttrKind::Binary: return "binary";
        case AttrKind::Categorical: return "categorical";
    }
    return "?";
}

AttrKind attr_kind_from_string(const std::string& s) {
    if (s == "numerical") return AttrKind::Numerical;
    if (s == "binary") return AttrKind::Binary;
    if (s == "categorical") return AttrKind::Categorical;
    throw ParseError("unknown attribute kind: '" + s + "'");
}

int AttributeSchema::index_of(const std::string& name) const {
    for (size_t i = 0; i < dims.size(); ++i)
        if (dims[i].name == name) return static_cast<int>(i);
    return -1;
}

void AttributeSchema::validate() const {
    if (dims.empty()) throw ValidationError("schema must have at least one dimension");
    std::unordered_set<std::string> seen;
    for (const auto& d : dims) {
        if (d.name.empty()) throw ValidationError("empty dimension name");
        if (!seen.insert(d.name).second)
            throw ValidationError("duplicate dimension name: '" + d.name + "'");
        if (d.kind == AttrKind::Categorical && d.domain.empty())
            throw ValidationError("categorical dimension '" + d.name + "' has empty domain");
    }
}

double attribute_difference(const AttributeSchema& schema, int dim, double a, double b) {
    const AttributeDim& d = schema.dims[dim];
    switch (d.kind) {
        case AttrKind::Numerical:
            return std::abs(a - b);
        case AttrKind::Categorical:
            return a == b ? 0.0 : 1.0;
        case AttrKind::Binary:
            if (a == 1.0 && b == 1.0) return 0.0;
            if (schema.binary_absence_similar && a == b) return 0.0;
            return a == b ? (a == 1.0 ? 0.0 : 1.0) : 1.0;
    }
    return 0.0;
}

AttributedGraph AttributedGraph::build(int node_count,
                                       std::vector<std::pair<int, int>> edges,
                                       std::vector<double> attrs,
                                       AttributeSchema schema,
                                       LoadStats* stats) {
    schema.validate();
    if (node_count <= 0) throw ValidationError("graph must have at least one node");
    if (attrs.size() != static_cast<size_t>(node_count) * schema.size())
        throw ValidationError("attribute matrix size does not match n x r");

    const int r = schema.size();
    for (int v = 0; v < node_count; ++v) {
        for (int i = 0; i < r; ++i) {
            double x = attrs[static_cast<size_t>(v) * r + i];
            const AttributeDim& d = schema.dims[i];
            switch (d.kind) {
                case AttrKind::Numerical:
                    if (x < 0.0 || x > 1.0)
                        throw ValidationError("numerical value out of [0,1] for node " +
                                              std::to_string(v) + " dim '" + d.name + "'");
                    break;
                case AttrKind::Binary:
                    if (x != 0.0 && x != 1.0)
                        throw ValidationError("binary value not in {0,1} for node " +
                                              std::to_string(v) + " dim '" + d.name + "'");
                    break;
                case AttrKind::Categorical:
                    if (x < 0.0 || x >= static_cast<double>(d.domain.size()) ||
                        x != std::floor(x))
                        throw ValidationError("categorical value outside domain for node " +
                                              std::to_string(v) + " dim '" + d.name + "'");
                    break;
            }
        }
    }

    LoadStats local{};
    std::vector<std::pair<int, int>> kept;
    kept.reserve(edges.size());
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count)
            throw ValidationError("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
        if (u == v) {
            ++local.self_loops_dropped;
            continue;
        }
        if (u > v) std::swap(u, v);
        std::uint64_t key = static_cast<std::uint64_t>(u) * node_count + v;
        if (!seen.insert(key).second) {
            ++local.duplicate_edges_dropped;
            continue;
        }
        kept.emplace_back(u, v);
    }
    std::sort(kept.begin(), kept.end());

    AttributedGraph g;
    g.n_ = node_count;
    g.edges_ = std::move(kept);
    g.attrs_ = std::move(attrs);
    g.schema_ = std::move(schema);

    g.offsets_.assign(node_count + 1, 0);
    for (auto [u, v] : g.edges_) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (int i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(g.offsets_[node_count]);
    g.adj_eid_.resize(g.offsets_[node_count]);
    std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
        auto [u, v] = g.edges_[e];
        g.adj_[cursor[u]] = v;
        g.adj_eid_[cursor[u]++] = e;
        g.adj_[cursor[v]] = u;
        g.adj_eid_[cursor[v]++] = e;
    }

    if (stats) *stats = local;
    return g;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

} // namespace

AttributeSchema load_schema(std::istream& in) {
    AttributeSchema schema;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        auto toks = split_ws(line);
        if (toks.size() < 2)
            throw ParseError("schema line " + std::to_string(lineno) +
                             ": expected 'name kind [domain...]'");
        AttributeDim d;
        d.name = toks[0];
        d.kind = attr_kind_from_string(toks[1]);
        d.domain.assign(toks.begin() + 2, toks.end());
        if (d.kind != AttrKind::Categorical && !d.domain.empty())
            throw ParseError("schema line " + std::to_string(lineno) +
                             ": domain values only allowed for categorical dimensions");
        schema.dims.push_back(std::move(d));
    }
    schema.validate();
    return schema;
}

void save_schema(std::ostream& out, const AttributeSchema& schema) {
    for (const auto& d : schema.dims) {
        out << d.name << ' ' << to_string(d.kind);
        for (const auto& v : d.domain) out << ' ' << v;
        out << '\n';
    }
}

AttributedGraph load_graph(std::istream& edges_in, std::istream& nodes_in,
                           const AttributeSchema& schema, LoadStats* stats) {
    schema.validate();
    const int r = schema.size();

    // Nodes first: they define the id space.
    struct Row {
        int id;
        std::vector<std::string> values;
    };
    std::vector<Row> rows;
    std::string line;
    int lineno = 0;
    int max_id = -1;
    while (std::getline(nodes_in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        auto toks = split_ws(line);
        if (static_cast<int>(toks.size()) != r + 1)
            throw ParseError("nodes line " + std::to_string(lineno) + ": expected id plus " +
                             std::to_string(r) + " values, got " +
                             std::to_string(toks.size() ? toks.size() - 1 : 0));
        Row row;
        try {
            row.id = std::stoi(toks[0]);
        } catch (const std::exception&) {
            throw ParseError("nodes line " + std::to_string(lineno) + ": bad node id '" +
                             toks[0] + "'");
        }
        if (row.id < 0)
            throw ParseError("nodes line " + std::to_string(lineno) + ": negative node id");
        row.values.assign(toks.begin() + 1, toks.end());
        max_id = std::max(max_id, row.id);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("nodes file is empty");
    const int n = max_id + 1;
    if (static_cast<int>(rows.size()) != n)
        throw ValidationError("node ids are not contiguous 0.." + std::to_string(n - 1));

    std::vector<double> attrs(static_cast<size_t>(n) * r,
                              std::numeric_limits<double>::quiet_NaN());
    for (const auto& row : rows) {
        for (int i = 0; i < r; ++i) {
            const AttributeDim& d = schema.dims[i];
            const std::string& tok = row.values[i];
            double x;
            switch (d.kind) {
                case AttrKind::Numerical:
                case AttrKind::Binary:
                    try {
                        x = std::stod(tok);
                    } catch (const std::exception&) {
                        throw ParseError("node " + std::to_string(row.id) + " dim '" + d.name +
                                         "': bad value '" + tok + "'");
                    }
                    break;
                case AttrKind::Categorical: {
                    auto it = std::find(d.domain.begin(), d.domain.end(), tok);
                    if (it == d.domain.end())
                        throw ParseError("node " + std::to_string(row.id) + " dim '" + d.name +
                                         "': value '" + tok + "' outside declared domain");
                    x = static_cast<double>(it - d.domain.begin());
                    break;
                }
            }
            attrs[static_cast<size_t>(row.id) * r + i] = x;
        }
    }

    // Min-max normalize numerical dimensions; a constant dimension maps to 0.
    for (int i = 0; i < r; ++i) {
        if (schema.dims[i].kind != AttrKind::Numerical) continue;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (int v = 0; v < n; ++v) {
            double x = attrs[static_cast<size_t>(v) * r + i];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        for (int v = 0; v < n; ++v) {
            double& x = attrs[static_cast<size_t>(v) * r + i];
            x = hi > lo ? (x - lo) / (hi - lo) : 0.0;
        }
    }

    std::vector<std::pair<int, int>> edges;
    lineno = 0;
    while (std::getline(edges_in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        auto toks = split_ws(line);
        if (toks.size() != 2)
            throw ParseError("edges line " + std::to_string(lineno) + ": expected 'u v'");
        int u, v;
        try {
            u = std::stoi(toks[0]);
            v = std::stoi(toks[1]);
        } catch (const std::exception&) {
            throw ParseError("edges line " + std::to_string(lineno) + ": bad node id");
        }
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ValidationError("edges line " + std::to_string(lineno) +
                                  ": edge references unknown node");
        edges.emplace_back(u, v);
    }

    return AttributedGraph::build(n, std::move(edges), std::move(attrs), schema, stats);
}

void save_edges(std::ostream& out, const AttributedGraph& g) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_nodes(std::ostream& out, const AttributedGraph& g) {
    const auto& schema = g.schema();
    const int r = schema.size();
    char buf[64];
    for (int v = 0; v < g.node_count(); ++v) {
        out << v;
        for (int i = 0; i < r; ++i) {
            double x = g.attribute(v, i);
            out << '\t';
            switch (schema.dims[i].kind) {
                case AttrKind::Numerical:
                    std::snprintf(buf, sizeof buf, "%.17g", x);
                    out << buf;
                    break;
                case AttrKind::Binary:
                    out << static_cast<int>(x);
                    break;
                case AttrKind::Categorical:
                    out << schema.dims[i].domain[static_cast<size_t>(x)];
                    break;
            }
        }
        out << '\n';
    }
}

} // namespace acm
