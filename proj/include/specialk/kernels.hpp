#pragma once

#include <vector>

#include "specialk/types.hpp"

namespace specialk::kernels {

/// Data-parallel inner loops, each with a serial reference twin used by the
/// tests and the benchmark target. Both variants run the same per-point
/// routine, so outputs are bitwise identical regardless of thread count.

/// Euclidean distance from each point to its q-th nearest neighbor
/// (self excluded, ties broken by lower index).
std::vector<double> kth_neighbor_distance(const RowMatrix& pts, int q);
std::vector<double> kth_neighbor_distance_serial(const RowMatrix& pts, int q);

/// The q nearest neighbors of each point, ordered by (distance, index).
std::vector<std::vector<int>> nearest_neighbors(const RowMatrix& pts, int q);
std::vector<std::vector<int>> nearest_neighbors_serial(const RowMatrix& pts, int q);

/// All neighbors l != j with dist(j, l) <= eps, ascending index.
std::vector<std::vector<int>> radius_neighbors(const RowMatrix& pts, double eps);
std::vector<std::vector<int>> radius_neighbors_serial(const RowMatrix& pts, double eps);

/// Nearest-center assignment: labels[j] = argmin_c ||D_j - X_c||^2 (ties by
/// lower center index), dist2[j] = the attained squared distance.
/// X holds one center per column (n x k).
void assign_to_centers(const RowMatrix& D, const Matrix& X,
                       std::vector<int>& labels, std::vector<double>& dist2);
void assign_to_centers_serial(const RowMatrix& D, const Matrix& X,
                              std::vector<int>& labels, std::vector<double>& dist2);

}  // namespace specialk::kernels
