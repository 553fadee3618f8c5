#pragma once

#include <vector>

#include "specialk/types.hpp"

namespace specialk {

/// Joint label-count table between a predicted and a true labeling.
struct Contingency {
    Eigen::MatrixXd counts;  // k_pred x k_true, entries sum to m
    Index m = 0;

    static Contingency from_labels(const std::vector<int>& pred,
                                   const std::vector<int>& truth);
};

/// Normalized mutual information I(pred;truth) / sqrt(H(pred) H(truth)),
/// natural logs; 0 when either side has zero entropy.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

struct HungarianResult {
    std::vector<int> assignment;  // row -> column
    double total = 0.0;
};

/// Minimum-cost perfect assignment on a square cost matrix (exact).
HungarianResult hungarian_match(const Matrix& cost);

/// Relabel pred so matched cluster ids line up with truth (maximum diagonal
/// agreement); predicted clusters without a true counterpart get fresh ids
/// starting at k_true.
std::vector<int> matched_labels(const std::vector<int>& pred,
                                const std::vector<int>& truth);

}  // namespace specialk
