#include "specialk/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specialk/kernels.hpp"
#include "specialk/rng.hpp"

namespace specialk {

std::vector<Index> ClusterAssignment::cluster_sizes() const {
    std::vector<Index> sizes(k, 0);
    for (int lab : labels) ++sizes[lab];
    return sizes;
}

std::vector<Index> ClusterAssignment::members(int c) const {
    std::vector<Index> out;
    for (Index j = 0; j < static_cast<Index>(labels.size()); ++j)
        if (labels[j] == c) out.push_back(j);
    return out;
}

Vector ClusterAssignment::indicator(int c) const {
    Vector y = Vector::Zero(static_cast<Index>(labels.size()));
    for (Index j = 0; j < y.size(); ++j)
        if (labels[j] == c) y(j) = 1.0;
    return y;
}

Matrix ClusterAssignment::indicator_matrix() const {
    Matrix Y = Matrix::Zero(static_cast<Index>(labels.size()), k);
    for (Index j = 0; j < Y.rows(); ++j) Y(j, labels[j]) = 1.0;
    return Y;
}

namespace {

struct RunResult {
    std::vector<int> labels;
    Matrix centers;
    double objective = std::numeric_limits<double>::infinity();
};

Matrix kmeanspp_centers(const RowMatrix& D, int k, Rng& rng) {
    const Index m = D.rows();
    Matrix X(D.cols(), k);
    X.col(0) = D.row(static_cast<Index>(rng.below(m))).transpose();

    Vector min_d2 = Vector::Constant(m, std::numeric_limits<double>::infinity());
    for (int c = 1; c < k; ++c) {
        for (Index j = 0; j < m; ++j) {
            const double d2 = (D.row(j).transpose() - X.col(c - 1)).squaredNorm();
            if (d2 < min_d2(j)) min_d2(j) = d2;
        }
        const double total = min_d2.sum();
        Index pick;
        if (total <= 0.0) {
            pick = static_cast<Index>(rng.below(m));  // all points coincide
        } else {
            double target = rng.uniform() * total;
            pick = m - 1;
            for (Index j = 0; j < m; ++j) {
                target -= min_d2(j);
                if (target <= 0.0) {
                    pick = j;
                    break;
                }
            }
        }
        X.col(c) = D.row(pick).transpose();
    }
    return X;
}

RunResult lloyd_run(const RowMatrix& D, int k, const KMeansOptions& opts, Rng rng,
                    std::vector<double>* objective_trace) {
    const Index m = D.rows();
    RunResult run;
    run.centers = kmeanspp_centers(D, k, rng);

    std::vector<int> labels;
    std::vector<double> dist2;
    double prev = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        kernels::assign_to_centers(D, run.centers, labels, dist2);

        // empty clusters grab the point farthest from its assigned center
        std::vector<Index> sizes(k, 0);
        for (int lab : labels) ++sizes[lab];
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            Index far = 0;
            double far_d2 = -1.0;
            for (Index j = 0; j < m; ++j)
                if (sizes[labels[j]] > 1 && dist2[j] > far_d2) {
                    far_d2 = dist2[j];
                    far = j;
                }
            --sizes[labels[far]];
            labels[far] = c;
            sizes[c] = 1;
            run.centers.col(c) = D.row(far).transpose();
            dist2[far] = 0.0;
        }

        // center update, sequential in cluster-then-index order
        Matrix sums = Matrix::Zero(D.cols(), k);
        std::vector<Index> counts(k, 0);
        for (Index j = 0; j < m; ++j) {
            sums.col(labels[j]) += D.row(j).transpose();
            ++counts[labels[j]];
        }
        for (int c = 0; c < k; ++c) run.centers.col(c) = sums.col(c) / double(counts[c]);

        // objective at the updated centers
        double objective = 0.0;
        for (Index j = 0; j < m; ++j)
            objective += (D.row(j).transpose() - run.centers.col(labels[j])).squaredNorm();

        if (objective_trace) objective_trace->push_back(objective);
        run.labels = labels;
        run.objective = objective;
        if (prev - objective < opts.tol) break;
        prev = objective;
    }
    return run;
}

}  // namespace

ClusterAssignment kmeans_fit(const RowMatrix& D, int k, const KMeansOptions& opts) {
    const Index m = D.rows();
    if (k < 1 || k > m) throw std::invalid_argument("kmeans_fit: need 1 <= k <= m");
    if (opts.restarts < 1) throw std::invalid_argument("kmeans_fit: restarts >= 1");

    std::vector<RunResult> runs(opts.restarts);
    if (opts.objective_traces) {
        opts.objective_traces->clear();
        opts.objective_traces->resize(opts.restarts);
    }
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < opts.restarts; ++r)
        runs[r] = lloyd_run(D, k, opts, Rng(mix_seed(opts.seed, r)),
                            opts.objective_traces ? &(*opts.objective_traces)[r]
                                                  : nullptr);

    int best = 0;
    for (int r = 1; r < opts.restarts; ++r)
        if (runs[r].objective < runs[best].objective) best = r;

    ClusterAssignment out;
    out.labels = std::move(runs[best].labels);
    out.centers = std::move(runs[best].centers);
    out.k = k;
    out.objective = runs[best].objective;
    out.restarts_used = opts.restarts;
    return out;
}

double similarity_objective(const Matrix& W, const ClusterAssignment& Y) {
    const Index m = W.rows();
    if (W.cols() != m || static_cast<Index>(Y.labels.size()) != m)
        throw std::invalid_argument("similarity_objective: shape mismatch");
    const auto sizes = Y.cluster_sizes();
    double sum = 0.0;
    for (int c = 0; c < Y.k; ++c) {
        if (sizes[c] == 0)
            throw std::invalid_argument("similarity_objective: empty cluster");
        const Vector y = Y.indicator(c);
        sum += y.dot(W * y) / double(sizes[c]);
    }
    return sum;
}

double similarity_objective(const SimilarityMatrix& W, const ClusterAssignment& Y) {
    const Index m = W.rows();
    if (static_cast<Index>(Y.labels.size()) != m)
        throw std::invalid_argument("similarity_objective: shape mismatch");
    const auto sizes = Y.cluster_sizes();
    double sum = 0.0;
    for (int c = 0; c < Y.k; ++c) {
        if (sizes[c] == 0)
            throw std::invalid_argument("similarity_objective: empty cluster");
        const Vector y = Y.indicator(c);
        sum += y.dot(W.apply(y)) / double(sizes[c]);
    }
    return sum;
}

}  // namespace specialk
