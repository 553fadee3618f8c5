#include "specialk/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "specialk/errors.hpp"
#include "specialk/kernels.hpp"

namespace specialk {

SimilarityMatrix::SimilarityMatrix(SparseMatrix weights, Kind kind)
    : weights_(std::move(weights)), kind_(kind) {
    if (weights_.rows() != weights_.cols())
        throw std::invalid_argument("SimilarityMatrix: must be square");
    for (Index outer = 0; outer < weights_.outerSize(); ++outer)
        for (SparseMatrix::InnerIterator it(weights_, outer); it; ++it) {
            if (it.value() < 0.0)
                throw std::invalid_argument("SimilarityMatrix: negative weight");
            if (it.row() == it.col() && it.value() != 0.0)
                throw std::invalid_argument("SimilarityMatrix: nonzero diagonal");
        }
    degrees_ = weights_ * Vector::Ones(weights_.rows());
}

SimilarityMatrix SimilarityMatrix::from_triplets(
    Index m, const std::vector<Eigen::Triplet<double>>& entries, Kind kind) {
    std::vector<Eigen::Triplet<double>> sym;
    sym.reserve(entries.size() * 2);
    for (const auto& e : entries) {
        if (e.row() == e.col())
            throw std::invalid_argument("SimilarityMatrix: diagonal entry");
        if (e.value() < 0.0)
            throw std::invalid_argument("SimilarityMatrix: negative weight");
        sym.push_back(e);
        sym.emplace_back(e.col(), e.row(), e.value());
    }
    SparseMatrix W(m, m);
    // duplicate coordinates collapse by keeping one value, not summing, so a
    // caller may list an edge once or mirrored without changing the graph
    W.setFromTriplets(sym.begin(), sym.end(),
                      [](const double& a, const double& b) {
                          if (a != b)
                              throw std::invalid_argument(
                                  "SimilarityMatrix: conflicting duplicate entries");
                          return b;
                      });
    return SimilarityMatrix(std::move(W), kind);
}

Vector SimilarityMatrix::apply(const Vector& x) const {
    if (x.size() != weights_.rows())
        throw std::invalid_argument("SimilarityMatrix::apply: dimension mismatch");
    return weights_ * x;
}

Vector SimilarityMatrix::neg_laplacian_apply(const Vector& x) const {
    if (x.size() != weights_.rows())
        throw std::invalid_argument(
            "SimilarityMatrix::neg_laplacian_apply: dimension mismatch");
    return weights_ * x - degrees_.cwiseProduct(x);
}

void SimilarityMatrix::save_triplets(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    char buf[64];
    for (Index outer = 0; outer < weights_.outerSize(); ++outer)
        for (SparseMatrix::InnerIterator it(weights_, outer); it; ++it) {
            std::snprintf(buf, sizeof buf, "%.12g", it.value());
            out << it.row() << ',' << it.col() << ',' << buf << '\n';
        }
    if (!out) throw parse_error(path.string() + ": write failed");
}

LaplacianView degrees(const SimilarityMatrix& W) { return {W.degrees()}; }

Vector neg_laplacian_apply(const SimilarityMatrix& W, const Vector& x) {
    return W.neg_laplacian_apply(x);
}

SimilarityMatrix build_eps_graph(const Dataset& data, double coverage,
                                 int min_neighbors) {
    const Index m = data.m();
    if (m < min_neighbors + 1)
        throw std::invalid_argument("build_eps_graph: need m >= min_neighbors + 1");
    if (!(coverage > 0.0 && coverage <= 1.0))
        throw std::invalid_argument("build_eps_graph: coverage must lie in (0,1]");

    std::vector<double> kth = kernels::kth_neighbor_distance(data.points, min_neighbors);
    std::vector<double> sorted = kth;
    std::sort(sorted.begin(), sorted.end());
    // nearest-rank quantile: smallest eps such that at least a `coverage`
    // fraction of points reaches its min_neighbors-th neighbor within eps
    const Index rank = std::min<Index>(
        m - 1, static_cast<Index>(std::ceil(coverage * double(m))) - 1);
    const double eps = sorted[std::max<Index>(Index{0}, rank)];

    const auto neigh = kernels::radius_neighbors(data.points, eps);
    std::vector<Eigen::Triplet<double>> entries;
    for (Index j = 0; j < m; ++j)
        for (int l : neigh[j])
            if (l > j) entries.emplace_back(j, l, 1.0);
    return SimilarityMatrix::from_triplets(m, entries,
                                           SimilarityMatrix::Kind::eps_adjacency);
}

SimilarityMatrix build_knn_graph(const Dataset& data, int k_neighbors) {
    const Index m = data.m();
    if (m < k_neighbors + 1)
        throw std::invalid_argument("build_knn_graph: need m >= k_neighbors + 1");

    const auto nn = kernels::nearest_neighbors(data.points, k_neighbors);

    // directed kNN edges, symmetrized by elementwise max ("or" for binary)
    std::vector<Eigen::Triplet<double>> entries;
    for (Index j = 0; j < m; ++j)
        for (int l : nn[j]) {
            const Index a = std::min<Index>(j, l), b = std::max<Index>(j, l);
            entries.emplace_back(a, b, 1.0);
        }
    SparseMatrix A(m, m);
    {
        std::vector<Eigen::Triplet<double>> sym;
        sym.reserve(entries.size() * 2);
        for (const auto& e : entries) {
            sym.push_back(e);
            sym.emplace_back(e.col(), e.row(), e.value());
        }
        A.setFromTriplets(sym.begin(), sym.end(),
                          [](const double&, const double& b) { return b; });
    }

    Vector deg = A * Vector::Ones(m);
    Vector inv_sqrt(m);
    for (Index j = 0; j < m; ++j)
        inv_sqrt(j) = deg(j) > 0.0 ? 1.0 / std::sqrt(deg(j)) : 0.0;

    SparseMatrix W = A;
    for (Index outer = 0; outer < W.outerSize(); ++outer)
        for (SparseMatrix::InnerIterator it(W, outer); it; ++it)
            it.valueRef() = it.value() * inv_sqrt(it.row()) * inv_sqrt(it.col());

    return SimilarityMatrix(std::move(W), SimilarityMatrix::Kind::knn_normalized);
}

}  // namespace specialk
