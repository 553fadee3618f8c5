#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "specialk/kmeans.hpp"
#include "specialk/types.hpp"

namespace specialk {

/// Rayleigh coefficient R(W, y) = y^T W y / |y| for a binary indicator y:
/// the ratio similarity of the points inside y.
double rayleigh(const Matrix& W, const Vector& y);

/// Ratio cut C(W, y) = y^T W (1-y) / |y|: the normalized weight of the edges
/// leaving the cluster y. C(W, y) = R(diag(W1) - W, y).
double cut_value(const Matrix& W, const Vector& y);

/// The rows of D restricted to an index set J, centered per column and scaled
/// by the uncentered restricted column norm, so every column of Z has norm
/// at most 1 and sums to 0. Columns with zero uncentered norm are dropped
/// and recorded. sigma2 is the pooled sample variance of the retained
/// entries: sum Z^2 / (n_eff |J|).
struct CenteredCluster {
    Matrix Z;  // |J| x n_eff
    std::vector<Index> J;
    double sigma2 = 0.0;
    std::vector<Index> dropped_columns;

    Index n_eff() const { return Z.cols(); }
};

CenteredCluster center_scale(const RowMatrix& D, const std::vector<Index>& J);

/// Tail bound on ||Z Z^T - n sigma^2 I||_op for centered, norm-bounded,
/// uncorrelated columns: m exp(-t^2 / (2 (n sigma^2 + t/3))), clipped to
/// [0, 1]; 1 for t <= 0, where no deviation is witnessed.
double zz_top_probability(double t, Index n_eff, double sigma2, Index m_rows);

/// t = R(Z Z^T, y) - n_eff sigma2, computed as ||Z^T y||^2 / |y| - n_eff sigma2
/// without materializing the Gram matrix. y indexes rows of Z (i.e. J).
double test_statistic(const CenteredCluster& cc, const Vector& y_restricted);

enum class MergeDecision {
    reject_merge,  // p <= alpha: the clusters are distinct
    accept_merge,  // the split is not supported; treat as one cluster
};

std::string to_string(MergeDecision d);

/// Verdict for a cluster pair: can both plausibly stem from the unified
/// cluster over J = c1 union c2?
struct MergeTestReport {
    std::pair<int, int> pair;  // normalized c1 < c2
    double t = 0.0;
    double p = 1.0;
    double sigma2 = 0.0;
    Index J_size = 0;
    MergeDecision decision = MergeDecision::accept_merge;
};

/// Center-scale the unified rows, take the larger of the two sub-cluster
/// statistics, and bound the probability of observing it under the
/// one-cluster hypothesis. decision = reject_merge iff p <= alpha.
MergeTestReport merge_test(const RowMatrix& D, const ClusterAssignment& Y,
                           int c1, int c2, double alpha);

/// Closed form for R(Z Z^T, y) with the plain columnwise-centered
/// Z = D - 1 mu^T (no per-column scaling), expressed through Rayleigh and
/// cut values of D D^T. Serves as an independent oracle for the direct
/// centered computation.
double remark1_rayleigh(const Matrix& D, const Vector& y);

/// Smallest Rayleigh value R such that
/// zz_top_probability(R - n sigma^2) <= alpha:
/// sqrt(2 n sigma^2 ln(m/alpha) + ln(m/alpha)^2 / 9) + n sigma^2 + ln(m/alpha)/3.
double threshold_rayleigh(Index m_rows, Index n_eff, double sigma2, double alpha);

}  // namespace specialk
