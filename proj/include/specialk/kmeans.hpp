#pragma once

#include <cstdint>
#include <vector>

#include "specialk/similarity.hpp"
#include "specialk/types.hpp"

namespace specialk {

/// Hard partition of m points into k nonempty clusters with stationary
/// centers: X column c is the mean of the rows assigned to c, and
/// objective = ||D - Y X^T||^2 for the binary indicator Y encoded by labels.
struct ClusterAssignment {
    std::vector<int> labels;  // m entries in [0, k)
    Matrix centers;           // n x k, one center per column
    int k = 0;
    double objective = 0.0;
    int restarts_used = 0;

    std::vector<Index> cluster_sizes() const;
    std::vector<Index> members(int c) const;
    /// Binary indicator column for cluster c (m-vector of 0/1).
    Vector indicator(int c) const;
    /// Full indicator matrix Y (m x k).
    Matrix indicator_matrix() const;
};

struct KMeansOptions {
    int restarts = 10;
    int max_iter = 300;
    double tol = 1e-9;  // stop when the objective improves by less than this
    std::uint64_t seed = 0;
    /// When set, receives the per-iteration objective of every restart
    /// (resized to `restarts`); the sequence is non-increasing within a run.
    std::vector<std::vector<double>>* objective_traces = nullptr;
};

/// Lloyd's algorithm with k-means++ seeding, best of `restarts` independent
/// runs (ties by lower restart index). Empty clusters are re-seeded to the
/// point farthest from its current center. Deterministic for a fixed seed.
ClusterAssignment kmeans_fit(const RowMatrix& D, int k,
                             const KMeansOptions& opts = {});

inline ClusterAssignment kmeans_fit(const RowMatrix& D, int k, int restarts,
                                    int max_iter, double tol, std::uint64_t seed) {
    return kmeans_fit(D, k, KMeansOptions{restarts, max_iter, tol, seed});
}

/// Sim(W, Y) = sum_c y_c^T W y_c / |y_c|; with W = D D^T this complements the
/// k-means objective: ||D - Y X^T||^2 = ||D||^2 - Sim(D D^T, Y).
double similarity_objective(const Matrix& W, const ClusterAssignment& Y);
double similarity_objective(const SimilarityMatrix& W, const ClusterAssignment& Y);

}  // namespace specialk
