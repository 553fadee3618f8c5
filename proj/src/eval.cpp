#include "specialk/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specialk {

Contingency Contingency::from_labels(const std::vector<int>& pred,
                                     const std::vector<int>& truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("contingency: label vectors differ in length");
    if (pred.empty()) throw std::invalid_argument("contingency: empty labelings");
    int k_pred = 0, k_true = 0;
    for (size_t j = 0; j < pred.size(); ++j) {
        if (pred[j] < 0 || truth[j] < 0)
            throw std::invalid_argument("contingency: negative label");
        k_pred = std::max(k_pred, pred[j] + 1);
        k_true = std::max(k_true, truth[j] + 1);
    }
    Contingency out;
    out.counts = Matrix::Zero(k_pred, k_true);
    out.m = static_cast<Index>(pred.size());
    for (size_t j = 0; j < pred.size(); ++j) out.counts(pred[j], truth[j]) += 1.0;
    return out;
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    const Contingency table = Contingency::from_labels(pred, truth);
    const double m = double(table.m);
    const Vector row_sums = table.counts.rowwise().sum();
    const Vector col_sums = table.counts.colwise().sum();

    double h_pred = 0.0, h_true = 0.0, info = 0.0;
    for (Index i = 0; i < row_sums.size(); ++i)
        if (row_sums(i) > 0.0) h_pred -= row_sums(i) / m * std::log(row_sums(i) / m);
    for (Index j = 0; j < col_sums.size(); ++j)
        if (col_sums(j) > 0.0) h_true -= col_sums(j) / m * std::log(col_sums(j) / m);
    if (h_pred == 0.0 || h_true == 0.0) return 0.0;

    for (Index i = 0; i < table.counts.rows(); ++i)
        for (Index j = 0; j < table.counts.cols(); ++j) {
            const double nij = table.counts(i, j);
            if (nij > 0.0)
                info += nij / m * std::log(nij * m / (row_sums(i) * col_sums(j)));
        }
    return std::clamp(info / std::sqrt(h_pred * h_true), 0.0, 1.0);
}

HungarianResult solve_assignment(const Matrix& cost) {
    const Index n = cost.rows();
    const double inf = std::numeric_limits<double>::infinity();

    // shortest augmenting paths with potentials, 1-based sentinels
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<Index> p(n + 1, 0), way(n + 1, 0);
    for (Index i = 1; i <= n; ++i) {
        p[0] = i;
        Index j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const Index i0 = p[j0];
            Index j1 = 0;
            double delta = inf;
            for (Index j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const Index j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    HungarianResult out;
    out.assignment.assign(n, -1);
    for (Index j = 1; j <= n; ++j)
        if (p[j] != 0) out.assignment[p[j] - 1] = static_cast<int>(j - 1);
    for (Index i = 0; i < n; ++i) out.total += cost(i, out.assignment[i]);
    return out;
}

HungarianResult hungarian_match(const Matrix& cost) {
    if (cost.rows() != cost.cols())
        throw std::invalid_argument("hungarian_match: cost matrix must be square");
    if (cost.rows() == 0)
        throw std::invalid_argument("hungarian_match: empty cost matrix");
    return solve_assignment(cost);
}

std::vector<int> matched_labels(const std::vector<int>& pred,
                                const std::vector<int>& truth) {
    const Contingency table = Contingency::from_labels(pred, truth);
    const Index k_pred = table.counts.rows();
    const Index k_true = table.counts.cols();
    const Index K = std::max(k_pred, k_true);

    // pad with zero agreement and minimize negated counts
    Matrix cost = Matrix::Zero(K, K);
    cost.topLeftCorner(k_pred, k_true) = -table.counts;
    const HungarianResult match = hungarian_match(cost);

    std::vector<int> new_id(k_pred, -1);
    int fresh = static_cast<int>(k_true);
    for (Index r = 0; r < k_pred; ++r) {
        const int target = match.assignment[r];
        new_id[r] = target < static_cast<int>(k_true) ? target : fresh++;
    }
    std::vector<int> out(pred.size());
    for (size_t j = 0; j < pred.size(); ++j) out[j] = new_id[pred[j]];
    return out;
}

}  // namespace specialk
