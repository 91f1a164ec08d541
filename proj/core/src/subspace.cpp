#include "acm/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace acm {

Subspace::Subspace(std::vector<int> dims) : dims_(std::move(dims)) {
    std::sort(dims_.begin(), dims_.end());
    dims_.erase(std::unique(dims_.begin(), dims_.end()), dims_.end());
    if (dims_.empty()) throw ConfigError("subspace must be non-empty");
    if (dims_.front() < 0) throw ConfigError("negative dimension index in subspace");
}

bool Subspace::contains(int dim) const {
    return std::binary_search(dims_.begin(), dims_.end(), dim);
}

bool Subspace::contains_all(std::span<const int> dims) const {
    for (int d : dims)
        if (!contains(d)) return false;
    return true;
}

Subspace Subspace::with(int dim) const {
    if (contains(dim)) throw ConfigError("dimension already in subspace");
    std::vector<int> d = dims_;
    d.push_back(dim);
    return Subspace(std::move(d));
}

Subspace Subspace::without(int dim) const {
    if (!contains(dim)) throw ConfigError("dimension not in subspace");
    if (size() < 2) throw ConfigError("cannot remove the last dimension of a subspace");
    std::vector<int> d;
    d.reserve(dims_.size() - 1);
    for (int x : dims_)
        if (x != dim) d.push_back(x);
    return Subspace(std::move(d));
}

double subspace_norm(const AttributeSchema& schema, std::span<const double> a,
                     std::span<const double> b, const Subspace& subspace) {
    double sum = 0.0;
    for (int i : subspace.dims()) {
        double d = attribute_difference(schema, i, a[i], b[i]);
        sum += d * d;
    }
    return std::sqrt(sum / subspace.size());
}

double subspace_norm(const AttributedGraph& g, int u, int v, const Subspace& subspace) {
    return subspace_norm(g.schema(), g.attribute_row(u), g.attribute_row(v), subspace);
}

} // namespace acm
