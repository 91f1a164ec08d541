#include "acm/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace acm {

namespace {

// Mean of a continuous power law x^-tau truncated to [a, b].
double plaw_mean(double tau, double a, double b) {
    if (std::abs(tau - 1.0) < 1e-9) return (b - a) / std::log(b / a);
    if (std::abs(tau - 2.0) < 1e-9) return std::log(b / a) / (1.0 / a - 1.0 / b);
    double p1 = 1.0 - tau, p2 = 2.0 - tau;
    return (p1 / p2) * (std::pow(b, p2) - std::pow(a, p2)) /
           (std::pow(b, p1) - std::pow(a, p1));
}

// Inverse-CDF sample of the truncated power law, u in [0,1).
double plaw_sample(double tau, double a, double b, double u) {
    if (std::abs(tau - 1.0) < 1e-9) return a * std::pow(b / a, u);
    double p1 = 1.0 - tau;
    return std::pow(std::pow(a, p1) + u * (std::pow(b, p1) - std::pow(a, p1)), 1.0 / p1);
}

// Lower cutoff making the truncated power-law mean equal the target.
double solve_lower_cutoff(double tau, double b, double target_mean) {
    double lo = 1.0, hi = b;
    if (plaw_mean(tau, lo, b) >= target_mean) return lo;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (plaw_mean(tau, mid, b) < target_mean)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::uint64_t edge_key(int u, int v, int n) {
    if (u > v) std::swap(u, v);
    return static_cast<std::uint64_t>(u) * n + v;
}

} // namespace

void BenchmarkParams::validate() const {
    if (n < 2) throw ConfigError("n must be >= 2");
    if (r < 1) throw ConfigError("r must be >= 1");
    if (t < 1 || t > r) throw ConfigError("t must satisfy 1 <= t <= r");
    if (c_min < 2) throw ConfigError("c_min must be >= 2");
    if (resolved_c_max() < c_min) throw ConfigError("c_max must be >= c_min");
    if (resolved_c_max() > n) throw ConfigError("c_max must be <= n");
    if (d_avg < 1.0) throw ConfigError("d_avg must be >= 1");
    if (d_avg > d_max) throw ConfigError("d_avg must be <= d_max");
    if (d_max >= n) throw ConfigError("d_max must be < n");
    if (mu < 0.0 || mu >= 1.0) throw ConfigError("mu must lie in [0,1)");
    if (p < 0.0 || p > 1.0) throw ConfigError("p must lie in [0,1]");
    if (tau1 <= 0.0 || tau2 <= 0.0) throw ConfigError("power-law exponents must be positive");
    if (numeric_band <= 0.0) throw ConfigError("numeric_band must be positive");
    if (binary_background_p < 0.0 || binary_background_p > 1.0)
        throw ConfigError("binary_background_p must lie in [0,1]");
    if (categorical_domain_size < 2) throw ConfigError("categorical domain needs >= 2 values");
    if ((1.0 - mu) * d_avg >= resolved_c_max())
        throw ConfigError("infeasible: average internal degree exceeds the largest community");
}

std::vector<double> attach_attributes(int n, GroundTruth& truth, const BenchmarkParams& params,
                                      std::mt19937_64& rng) {
    const int r = params.r;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> cat(0, params.categorical_domain_size - 1);

    auto background = [&]() -> double {
        switch (params.type) {
            case AttrKind::Numerical: return unit(rng);
            case AttrKind::Binary: return unit(rng) < params.binary_background_p ? 1.0 : 0.0;
            case AttrKind::Categorical: return static_cast<double>(cat(rng));
        }
        return 0.0;
    };

    std::vector<double> attrs(static_cast<size_t>(n) * r);
    for (auto& x : attrs) x = background();

    if (truth.subspaces.empty()) {
        truth.subspaces.resize(truth.communities.size());
        std::vector<int> all_dims(r);
        std::iota(all_dims.begin(), all_dims.end(), 0);
        for (auto& sub : truth.subspaces) {
            std::shuffle(all_dims.begin(), all_dims.end(), rng);
            sub.assign(all_dims.begin(), all_dims.begin() + params.t);
            std::sort(sub.begin(), sub.end());
        }
    }

    for (size_t k = 0; k < truth.communities.size(); ++k) {
        for (int dim : truth.subspaces[k]) {
            double planted = 0.0;
            switch (params.type) {
                case AttrKind::Numerical: planted = unit(rng); break;
                case AttrKind::Binary: planted = 1.0; break;
                case AttrKind::Categorical: planted = static_cast<double>(cat(rng)); break;
            }
            for (int v : truth.communities[k]) {
                if (unit(rng) >= params.p) continue; // keep background noise
                double x = planted;
                if (params.type == AttrKind::Numerical) {
                    double lo = std::max(0.0, planted - params.numeric_band);
                    double hi = std::min(1.0, planted + params.numeric_band);
                    x = lo + (hi - lo) * unit(rng);
                }
                attrs[static_cast<size_t>(v) * r + dim] = x;
            }
        }
    }
    return attrs;
}

Benchmark generate(const BenchmarkParams& params) {
    params.validate();
    std::mt19937_64 rng(params.rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = params.n;
    const int c_max = params.resolved_c_max();
    int adjustments = 0;
    int dropped = 0;

    // 1. Degree sequence from a truncated power law whose lower cutoff is
    //    solved so the expected mean matches d_avg.
    double d_min = solve_lower_cutoff(params.tau1, params.d_max, params.d_avg);
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) {
        double x = plaw_sample(params.tau1, d_min, params.d_max, unit(rng));
        degree[v] = std::clamp(static_cast<int>(std::lround(x)), 1, params.d_max);
    }

    // 2. Community sizes: draw until they cover n, trim the last one.
    std::vector<int> sizes;
    long long total = 0;
    while (total < n) {
        double x = params.c_min == c_max
                       ? params.c_min
                       : plaw_sample(params.tau2, params.c_min, c_max, unit(rng));
        int s = std::clamp(static_cast<int>(std::lround(x)), params.c_min, c_max);
        sizes.push_back(s);
        total += s;
    }
    sizes.back() -= static_cast<int>(total - n); // excess is always < the last draw
    if (sizes.size() == 1) {
        if (sizes.back() < params.c_min) throw ConfigError("infeasible: n smaller than c_min");
    }
    while (sizes.back() < params.c_min) {
        // Steal members from communities above c_min; if none have slack,
        // fold the short remainder into the others.
        bool stole = false;
        for (size_t j = 0; j + 1 < sizes.size() && sizes.back() < params.c_min; ++j) {
            while (sizes[j] > params.c_min && sizes.back() < params.c_min) {
                --sizes[j];
                ++sizes.back();
                stole = true;
            }
        }
        if (sizes.back() >= params.c_min) break;
        if (!stole) {
            int leftover = sizes.back();
            sizes.pop_back();
            bool progressed = true;
            while (leftover > 0 && progressed) {
                progressed = false;
                for (size_t j = 0; j < sizes.size() && leftover > 0; ++j) {
                    if (sizes[j] < c_max) {
                        ++sizes[j];
                        --leftover;
                        progressed = true;
                    }
                }
            }
            if (leftover > 0)
                throw ConfigError("infeasible: cannot partition n into [c_min, c_max] sizes");
            break;
        }
    }

    const int num_comms = static_cast<int>(sizes.size());

    // 3. Internal degrees, clamped so every node fits in some community.
    std::vector<int> int_deg(n);
    const int max_size = *std::max_element(sizes.begin(), sizes.end());
    for (int v = 0; v < n; ++v) {
        int_deg[v] = static_cast<int>(std::lround((1.0 - params.mu) * degree[v]));
        while (int_deg[v] > max_size - 1) {
            --degree[v];
            int_deg[v] = static_cast<int>(std::lround((1.0 - params.mu) * degree[v]));
            ++adjustments;
        }
    }

    // 4. Assign nodes to communities, high internal degree first.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return int_deg[a] > int_deg[b]; });
    std::vector<int> slots(sizes.begin(), sizes.end());
    std::vector<int> comm_of(n, -1);
    std::vector<int> feasible;
    for (int v : order) {
        feasible.clear();
        for (int k = 0; k < num_comms; ++k)
            if (slots[k] > 0 && sizes[k] > int_deg[v]) feasible.push_back(k);
        int chosen;
        if (!feasible.empty()) {
            chosen = feasible[std::uniform_int_distribution<size_t>(0, feasible.size() - 1)(rng)];
        } else {
            // Largest community with a free slot; shrink the node to fit.
            chosen = -1;
            for (int k = 0; k < num_comms; ++k)
                if (slots[k] > 0 && (chosen < 0 || sizes[k] > sizes[chosen])) chosen = k;
            while (int_deg[v] > sizes[chosen] - 1) {
                --degree[v];
                int_deg[v] = static_cast<int>(std::lround((1.0 - params.mu) * degree[v]));
                ++adjustments;
            }
        }
        comm_of[v] = chosen;
        --slots[chosen];
    }

    GroundTruth truth;
    truth.communities.resize(num_comms);
    for (int v = 0; v < n; ++v) truth.communities[comm_of[v]].push_back(v);
    for (auto& c : truth.communities) std::sort(c.begin(), c.end());

    // 5. Internal stub parity per community.
    for (const auto& members : truth.communities) {
        long long sum = 0;
        for (int v : members) sum += int_deg[v];
        if (sum % 2 != 0) {
            for (int v : members) {
                if (int_deg[v] > 0) {
                    --int_deg[v]; // the freed stub becomes external
                    ++adjustments;
                    break;
                }
            }
        }
    }

    std::vector<std::pair<int, int>> edges;
    std::unordered_set<std::uint64_t> edge_set;

    // 6. Internal wiring: Havel-Hakimi per community with randomized ties,
    //    realizing the internal degree sequence exactly when graphical.
    for (const auto& members : truth.communities) {
        std::vector<int> remaining;
        std::vector<int> local(members.begin(), members.end());
        std::shuffle(local.begin(), local.end(), rng);
        remaining.resize(local.size());
        for (size_t i = 0; i < local.size(); ++i) remaining[i] = int_deg[local[i]];
        std::vector<std::unordered_set<int>> nb(local.size());
        for (;;) {
            int u = -1;
            for (size_t i = 0; i < local.size(); ++i)
                if (remaining[i] > 0 && (u < 0 || remaining[i] > remaining[u]))
                    u = static_cast<int>(i);
            if (u < 0) break;
            std::vector<int> cands;
            for (size_t i = 0; i < local.size(); ++i)
                if (static_cast<int>(i) != u && remaining[i] > 0 && !nb[u].count(static_cast<int>(i)))
                    cands.push_back(static_cast<int>(i));
            std::stable_sort(cands.begin(), cands.end(),
                             [&](int a, int b) { return remaining[a] > remaining[b]; });
            int want = remaining[u];
            if (static_cast<int>(cands.size()) < want) {
                dropped += want - static_cast<int>(cands.size());
                want = static_cast<int>(cands.size());
            }
            for (int i = 0; i < want; ++i) {
                int w = cands[i];
                edges.emplace_back(local[u], local[w]);
                edge_set.insert(edge_key(local[u], local[w], n));
                nb[u].insert(w);
                nb[w].insert(u);
                --remaining[w];
            }
            remaining[u] = 0;
        }
    }

    // 7. External wiring: configuration pairing of the leftover stubs with
    //    same-community pairs, self loops and duplicates rejected.
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
        for (int s = int_deg[v]; s < degree[v]; ++s) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    if (stubs.size() % 2 != 0) {
        stubs.pop_back();
        ++dropped;
    }
    auto bad = [&](int u, int v) {
        return u == v || comm_of[u] == comm_of[v] || edge_set.count(edge_key(u, v, n)) > 0;
    };
    const long long max_swaps = 10LL * (edges.size() + stubs.size() / 2 + 1);
    long long swaps = 0;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
        int tries = 0;
        while (bad(stubs[i], stubs[i + 1]) && tries < 200 && swaps < max_swaps) {
            size_t j = std::uniform_int_distribution<size_t>(i + 1, stubs.size() - 1)(rng);
            std::swap(stubs[i + 1], stubs[j]);
            ++tries;
            ++swaps;
        }
        if (bad(stubs[i], stubs[i + 1])) {
            dropped += 2;
            continue;
        }
        edges.emplace_back(stubs[i], stubs[i + 1]);
        edge_set.insert(edge_key(stubs[i], stubs[i + 1], n));
    }

    // 8. Attributes and schema.
    std::vector<double> attrs = attach_attributes(n, truth, params, rng);
    AttributeSchema schema;
    for (int i = 0; i < params.r; ++i) {
        AttributeDim d;
        d.name = "a" + std::to_string(i);
        d.kind = params.type;
        if (params.type == AttrKind::Categorical)
            for (int c = 0; c < params.categorical_domain_size; ++c)
                d.domain.push_back("c" + std::to_string(c));
        schema.dims.push_back(std::move(d));
    }

    Benchmark bench{AttributedGraph::build(n, std::move(edges), std::move(attrs), schema), {},
                    adjustments, dropped};
    bench.truth = std::move(truth);
    return bench;
}

Subspace pick_concerned(const GroundTruth& truth, int k, std::uint64_t rng_seed) {
    if (truth.communities.empty()) throw ConfigError("pick_concerned: empty ground truth");
    std::mt19937_64 rng(rng_seed);
    size_t idx = std::uniform_int_distribution<size_t>(0, truth.communities.size() - 1)(rng);
    std::vector<int> dims = truth.subspaces.at(idx);
    if (k < 1 || k > static_cast<int>(dims.size()))
        throw ConfigError("pick_concerned: k must satisfy 1 <= k <= t");
    std::shuffle(dims.begin(), dims.end(), rng);
    dims.resize(k);
    return Subspace(std::move(dims));
}

void save_ground_truth(std::ostream& out, const GroundTruth& truth) {
    for (size_t k = 0; k < truth.communities.size(); ++k) {
        bool first = true;
        for (int v : truth.communities[k]) {
            if (!first) out << ' ';
            out << v;
            first = false;
        }
        out << " |";
        for (int d : truth.subspaces[k]) out << ' ' << d;
        out << '\n';
    }
}

GroundTruth load_ground_truth(std::istream& in) {
    GroundTruth truth;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto bar = line.find('|');
        if (bar == std::string::npos)
            throw ParseError("ground truth line " + std::to_string(lineno) + ": missing '|'");
        std::vector<int> members, dims;
        std::istringstream left(line.substr(0, bar)), right(line.substr(bar + 1));
        int x;
        while (left >> x) members.push_back(x);
        while (right >> x) dims.push_back(x);
        if (members.empty())
            throw ParseError("ground truth line " + std::to_string(lineno) + ": empty community");
        std::sort(members.begin(), members.end());
        std::sort(dims.begin(), dims.end());
        truth.communities.push_back(std::move(members));
        truth.subspaces.push_back(std::move(dims));
    }
    return truth;
}

} // namespace acm
