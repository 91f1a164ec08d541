#include "acm/evaluation.hpp"

#include <algorithm>

namespace acm {

std::vector<std::vector<int>> ground_truth_organization(const GroundTruth& truth,
                                                        std::span<const int> concerned) {
    std::vector<std::vector<int>> out;
    for (size_t k = 0; k < truth.communities.size(); ++k) {
        const auto& sub = truth.subspaces[k];
        bool all = std::all_of(concerned.begin(), concerned.end(), [&](int d) {
            return std::binary_search(sub.begin(), sub.end(), d);
        });
        if (all) out.push_back(truth.communities[k]);
    }
    return out;
}

double f1(std::span<const int> a, std::span<const int> b) {
    if (a.empty()) throw ValidationError("f1: first set must be non-empty");
    if (b.empty()) return 0.0;
    size_t i = 0, j = 0, isect = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++isect; ++i; ++j; }
    }
    if (isect == 0) return 0.0;
    double precision = static_cast<double>(isect) / b.size();
    double recall = static_cast<double>(isect) / a.size();
    return 2.0 * precision * recall / (precision + recall);
}

EvalReport quality_q(const std::vector<std::vector<int>>& truth_org,
                     const std::vector<std::vector<int>>& detected) {
    if (truth_org.empty()) throw ValidationError("quality_q: empty ground-truth organization");
    EvalReport report;
    double sum = 0.0;
    for (size_t i = 0; i < truth_org.size(); ++i) {
        EvalReport::Match match;
        match.truth_index = static_cast<int>(i);
        for (size_t j = 0; j < detected.size(); ++j) {
            double score = f1(truth_org[i], detected[j]);
            if (score > match.best_f1) {
                match.best_f1 = score;
                match.detected_index = static_cast<int>(j);
            }
        }
        sum += match.best_f1;
        report.matches.push_back(match);
    }
    report.q = sum / truth_org.size();
    return report;
}

} // namespace acm
