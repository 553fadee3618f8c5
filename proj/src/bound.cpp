#include "specialk/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specialk/errors.hpp"

namespace specialk {

namespace {

double indicator_size(const Vector& y) {
    double size = 0.0;
    for (Index j = 0; j < y.size(); ++j) {
        if (y(j) != 0.0 && y(j) != 1.0)
            throw std::invalid_argument("indicator vector must be binary");
        size += y(j);
    }
    return size;
}

constexpr double kSigmaFloor = 1e-300;

}  // namespace

double rayleigh(const Matrix& W, const Vector& y) {
    if (W.rows() != W.cols() || W.rows() != y.size())
        throw std::invalid_argument("rayleigh: shape mismatch");
    const double size = indicator_size(y);
    if (size < 1.0) throw std::invalid_argument("rayleigh: empty indicator");
    return y.dot(W * y) / size;
}

double cut_value(const Matrix& W, const Vector& y) {
    if (W.rows() != W.cols() || W.rows() != y.size())
        throw std::invalid_argument("cut_value: shape mismatch");
    const double size = indicator_size(y);
    if (size < 1.0) throw std::invalid_argument("cut_value: empty indicator");
    const Vector complement = Vector::Ones(y.size()) - y;
    return y.dot(W * complement) / size;
}

CenteredCluster center_scale(const RowMatrix& D, const std::vector<Index>& J) {
    if (J.size() < 2)
        throw std::invalid_argument("center_scale: need |J| >= 2");
    for (Index j : J)
        if (j < 0 || j >= D.rows())
            throw std::invalid_argument("center_scale: index out of range");

    const Index rows = static_cast<Index>(J.size());
    const Index n = D.cols();

    Matrix restricted(rows, n);
    for (Index r = 0; r < rows; ++r) restricted.row(r) = D.row(J[r]);

    CenteredCluster out;
    out.J = J;
    out.Z.resize(rows, n);
    Index kept = 0;
    for (Index i = 0; i < n; ++i) {
        const double norm = restricted.col(i).norm();
        if (norm == 0.0) {
            out.dropped_columns.push_back(i);
            continue;
        }
        const double mean = restricted.col(i).sum() / double(rows);
        out.Z.col(kept) = (restricted.col(i).array() - mean) / norm;
        ++kept;
    }
    if (kept == 0) throw numeric_error("center_scale: all columns dropped");
    out.Z.conservativeResize(rows, kept);
    out.sigma2 = out.Z.squaredNorm() / (double(kept) * double(rows));
    return out;
}

double zz_top_probability(double t, Index n_eff, double sigma2, Index m_rows) {
    if (sigma2 <= 0.0)
        throw std::invalid_argument("zz_top_probability: sigma2 must be positive");
    if (n_eff < 1 || m_rows < 1)
        throw std::invalid_argument("zz_top_probability: need n_eff, m_rows >= 1");
    if (t <= 0.0) return 1.0;
    const double exponent = -0.5 * t * t / (double(n_eff) * sigma2 + t / 3.0);
    const double raw = double(m_rows) * std::exp(exponent);
    return std::clamp(raw, 0.0, 1.0);
}

double test_statistic(const CenteredCluster& cc, const Vector& y_restricted) {
    if (y_restricted.size() != cc.Z.rows())
        throw std::invalid_argument("test_statistic: indicator length mismatch");
    const double size = indicator_size(y_restricted);
    if (size < 1.0) throw std::invalid_argument("test_statistic: empty indicator");
    const double r = (cc.Z.transpose() * y_restricted).squaredNorm() / size;
    return r - double(cc.n_eff()) * cc.sigma2;
}

std::string to_string(MergeDecision d) {
    return d == MergeDecision::reject_merge ? "reject_merge" : "accept_merge";
}

MergeTestReport merge_test(const RowMatrix& D, const ClusterAssignment& Y,
                           int c1, int c2, double alpha) {
    if (c1 == c2) throw std::invalid_argument("merge_test: need two distinct clusters");
    if (c1 < 0 || c2 < 0 || c1 >= Y.k || c2 >= Y.k)
        throw std::invalid_argument("merge_test: cluster id out of range");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("merge_test: alpha must lie in (0,1)");
    if (static_cast<Index>(Y.labels.size()) != D.rows())
        throw std::invalid_argument("merge_test: assignment/data mismatch");

    MergeTestReport report;
    report.pair = {std::min(c1, c2), std::max(c1, c2)};

    std::vector<Index> J;
    Index size1 = 0, size2 = 0;
    for (Index j = 0; j < D.rows(); ++j)
        if (Y.labels[j] == c1 || Y.labels[j] == c2) {
            J.push_back(j);
            ++(Y.labels[j] == report.pair.first ? size1 : size2);
        }
    if (size1 == 0 || size2 == 0)
        throw std::invalid_argument("merge_test: empty cluster");

    const CenteredCluster cc = center_scale(D, J);
    report.sigma2 = cc.sigma2;
    report.J_size = static_cast<Index>(J.size());

    Vector y1 = Vector::Zero(report.J_size);
    Vector y2 = Vector::Zero(report.J_size);
    for (Index r = 0; r < report.J_size; ++r)
        (Y.labels[J[r]] == report.pair.first ? y1 : y2)(r) = 1.0;

    report.t = std::max(test_statistic(cc, y1), test_statistic(cc, y2));

    // a degenerate cluster (all retained columns constant on J) offers no
    // evidence for a split
    report.p = cc.sigma2 <= kSigmaFloor
                   ? 1.0
                   : zz_top_probability(report.t, cc.n_eff(), cc.sigma2,
                                        report.J_size);
    report.decision = report.p <= alpha ? MergeDecision::reject_merge
                                        : MergeDecision::accept_merge;
    return report;
}

double remark1_rayleigh(const Matrix& D, const Vector& y) {
    const Index m = D.rows();
    if (y.size() != m) throw std::invalid_argument("remark1_rayleigh: shape mismatch");
    const double size = indicator_size(y);
    if (size < 1.0 || size > double(m) - 1.0)
        throw std::invalid_argument(
            "remark1_rayleigh: both cluster parts must be nonempty");

    const Vector complement = Vector::Ones(m) - y;
    const Matrix gram = D * D.transpose();
    const double ratio_y = y.sum() / double(m);
    const double ratio_comp = complement.sum() / double(m);
    const double cut_pair = cut_value(gram, y) + cut_value(gram, complement);
    // the pair-cut term carries both size ratios; for |y| = m/2 this reduces
    // to the single-ratio form
    return ratio_comp * (ratio_comp * rayleigh(gram, y) -
                         2.0 * ratio_y * ratio_comp * cut_pair +
                         ratio_y * rayleigh(gram, complement));
}

double threshold_rayleigh(Index m_rows, Index n_eff, double sigma2, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("threshold_rayleigh: alpha must lie in (0,1)");
    if (sigma2 <= 0.0)
        throw std::invalid_argument("threshold_rayleigh: sigma2 must be positive");
    if (n_eff < 1 || m_rows < 1)
        throw std::invalid_argument("threshold_rayleigh: need n_eff, m_rows >= 1");
    const double log_term = std::log(double(m_rows) / alpha);
    const double ns2 = double(n_eff) * sigma2;
    return std::sqrt(2.0 * ns2 * log_term + log_term * log_term / 9.0) + ns2 +
           log_term / 3.0;
}

}  // namespace specialk
