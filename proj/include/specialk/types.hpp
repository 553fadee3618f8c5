#pragma once

#include <Eigen/Dense>

namespace specialk {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Points-in-rows matrices (datasets, embeddings) are kept row-major so
/// per-point kernels touch contiguous memory.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace specialk
