#pragma once

#include <filesystem>
#include <vector>

#include <Eigen/SparseCore>

#include "specialk/dataset.hpp"
#include "specialk/types.hpp"

namespace specialk {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Symmetric nonnegative-weight graph over data points; zero diagonal.
class SimilarityMatrix {
public:
    enum class Kind { eps_adjacency, knn_normalized, custom };

    SimilarityMatrix() = default;
    SimilarityMatrix(SparseMatrix weights, Kind kind);

    /// Build from (row, col, weight) triplets; entries are mirrored so the
    /// result is symmetric, diagonal entries are rejected.
    static SimilarityMatrix from_triplets(
        Index m, const std::vector<Eigen::Triplet<double>>& entries,
        Kind kind = Kind::custom);

    Index rows() const { return weights_.rows(); }
    Index nonzeros() const { return weights_.nonZeros(); }
    Kind kind() const { return kind_; }
    const SparseMatrix& weights() const { return weights_; }
    double coeff(Index j, Index l) const { return weights_.coeff(j, l); }

    /// Row sums W 1 (cached at construction).
    const Vector& degrees() const { return degrees_; }

    /// W x.
    Vector apply(const Vector& x) const;

    /// (W - diag(W1)) x = (-L) x, without materializing -L.
    Vector neg_laplacian_apply(const Vector& x) const;

    Matrix dense() const { return Matrix(weights_); }

    /// Coordinate triplet text export, "row,col,weight" per line, 0-based,
    /// upper and lower mirror entries both present.
    void save_triplets(const std::filesystem::path& path) const;

private:
    SparseMatrix weights_;
    Vector degrees_;
    Kind kind_ = Kind::custom;
};

/// Laplacian-side view of a similarity matrix: L = diag(W1) - W in the
/// difference form. Only the degree vector is stored.
struct LaplacianView {
    enum class Form { difference };

    Vector degree;
    Form form = Form::difference;
};

LaplacianView degrees(const SimilarityMatrix& W);

Vector neg_laplacian_apply(const SimilarityMatrix& W, const Vector& x);

/// Binary eps-neighborhood adjacency. eps is the `coverage` quantile
/// (nearest-rank) of the per-point distance to its min_neighbors-th nearest
/// neighbor, so at least a `coverage` fraction of points keeps at least
/// min_neighbors neighbors. Distinct coincident points are connected.
SimilarityMatrix build_eps_graph(const Dataset& data, double coverage = 0.99,
                                 int min_neighbors = 10);

/// Symmetrically normalized kNN adjacency: A symmetrized by elementwise max,
/// then W = Deg^{-1/2} A Deg^{-1/2}. Zero-degree rows stay zero.
SimilarityMatrix build_knn_graph(const Dataset& data, int k_neighbors = 10);

}  // namespace specialk
