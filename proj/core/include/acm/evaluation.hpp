#pragma once

#include "acm/benchgen.hpp"
#include "acm/errors.hpp"

#include <span>
#include <vector>

namespace acm {

/// Ground-truth communities whose planted subspace contains every
/// concerned dimension (all of them when `concerned` is empty).
std::vector<std::vector<int>> ground_truth_organization(const GroundTruth& truth,
                                                        std::span<const int> concerned);

/// F1 between two sorted node sets: harmonic mean of precision |a&b|/|b|
/// and recall |a&b|/|a|; 0 when the intersection or b is empty.
double f1(std::span<const int> a, std::span<const int> b);

struct EvalReport {
    struct Match {
        int truth_index = -1;
        double best_f1 = 0.0;
        int detected_index = -1; // -1 when nothing matched
        double subspace_jaccard = -1.0; // reported, not part of Q
    };
    double q = 0.0;
    std::vector<Match> matches;
};

/// Q = mean over truth communities of the best F1 against any detected
/// community; Q = 0 when nothing was detected. Throws on empty truth.
EvalReport quality_q(const std::vector<std::vector<int>>& truth_org,
                     const std::vector<std::vector<int>>& detected);

} // namespace acm
