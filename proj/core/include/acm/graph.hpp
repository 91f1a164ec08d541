#pragma once

#include "acm/errors.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace acm {

enum class AttrKind { Numerical, Binary, Categorical };

const char* to_string(AttrKind kind);
AttrKind attr_kind_from_string(const std::string& s);

struct AttributeDim {
    std::string name;
    AttrKind kind = AttrKind::Numerical;
    std::vector<std::string> domain; // categorical only
};

/// Typed attribute schema. Dimension names are unique; categorical
/// domains are non-empty. `binary_absence_similar` switches the
/// binary-difference rule for (0,0) pairs from 1 (default) to 0.
struct AttributeSchema {
    std::vector<AttributeDim> dims;
    bool binary_absence_similar = false;

    int size() const { return static_cast<int>(dims.size()); }
    int index_of(const std::string& name) const; // -1 if absent
    void validate() const;
};

/// Difference between two stored values on one dimension, always in [0,1].
/// Numerical values are assumed already normalized to [0,1]; categorical
/// values are domain indices.
double attribute_difference(const AttributeSchema& schema, int dim, double a, double b);

struct LoadStats {
    int self_loops_dropped = 0;
    int duplicate_edges_dropped = 0;
};

/// Immutable undirected attributed graph. Each edge is stored once in the
/// edge list and twice in the adjacency index. Attribute values are stored
/// as doubles: numerical values min-max normalized to [0,1], binary 0/1,
/// categorical as the index into the dimension's domain.
class AttributedGraph {
public:
    AttributedGraph() = default;

    /// Validates, normalizes numerical dimensions, drops self-loops and
    /// duplicate edges (counted in `stats`), and builds the adjacency index.
    /// `attrs` is row-major n x r; categorical entries are domain indices.
    static AttributedGraph build(int node_count,
                                 std::vector<std::pair<int, int>> edges,
                                 std::vector<double> attrs,
                                 AttributeSchema schema,
                                 LoadStats* stats = nullptr);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int attr_count() const { return schema_.size(); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const AttributeSchema& schema() const { return schema_; }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    /// Edge ids parallel to neighbors(v).
    std::span<const int> incident_edges(int v) const {
        return {adj_eid_.data() + offsets_[v], adj_eid_.data() + offsets_[v + 1]};
    }
    int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

    double attribute(int v, int dim) const { return attrs_[static_cast<size_t>(v) * schema_.size() + dim]; }
    std::span<const double> attribute_row(int v) const {
        return {attrs_.data() + static_cast<size_t>(v) * schema_.size(),
                static_cast<size_t>(schema_.size())};
    }

    bool operator==(const AttributedGraph& other) const {
        return n_ == other.n_ && edges_ == other.edges_ && attrs_ == other.attrs_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_; // u < v
    std::vector<int> offsets_;
    std::vector<int> adj_;
    std::vector<int> adj_eid_;
    std::vector<double> attrs_;
    AttributeSchema schema_;
};

// --- file I/O -------------------------------------------------------------
//
// edges file:  whitespace-separated "u v" per line, 0-based ids, '#' comments
// nodes file:  "id<TAB>v1<TAB>...<TAB>vr" per line, ordering per schema
// schema file: one dimension per line, "name kind [domain values...]",
//              '#' comments

AttributeSchema load_schema(std::istream& in);
void save_schema(std::ostream& out, const AttributeSchema& schema);

AttributedGraph load_graph(std::istream& edges_in, std::istream& nodes_in,
                           const AttributeSchema& schema, LoadStats* stats = nullptr);

void save_edges(std::ostream& out, const AttributedGraph& g);
void save_nodes(std::ostream& out, const AttributedGraph& g);

} // namespace acm
