#include "specialk/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specialk::kernels {

namespace {

void squared_dists_to_all(const RowMatrix& pts, Index j, std::vector<double>& d2) {
    const Index m = pts.rows();
    d2.resize(m);
    for (Index l = 0; l < m; ++l)
        d2[l] = (pts.row(j) - pts.row(l)).squaredNorm();
}

// q smallest (dist, index) pairs excluding self, sorted ascending.
void q_nearest_of_point(const RowMatrix& pts, Index j, int q,
                        std::vector<std::pair<double, int>>& out,
                        std::vector<double>& scratch) {
    squared_dists_to_all(pts, j, scratch);
    out.clear();
    for (Index l = 0; l < pts.rows(); ++l)
        if (l != j) out.emplace_back(scratch[l], static_cast<int>(l));
    const auto cmp = [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    };
    std::partial_sort(out.begin(), out.begin() + q, out.end(), cmp);
    out.resize(q);
}

}  // namespace

template <bool Parallel>
static std::vector<double> kth_neighbor_distance_impl(const RowMatrix& pts, int q) {
    const Index m = pts.rows();
    if (q < 1 || q > m - 1)
        throw std::invalid_argument("kth_neighbor_distance: need 1 <= q <= m-1");
    std::vector<double> out(m);
#pragma omp parallel for schedule(static) if (Parallel)
    for (Index j = 0; j < m; ++j) {
        std::vector<std::pair<double, int>> nn;
        std::vector<double> scratch;
        q_nearest_of_point(pts, j, q, nn, scratch);
        out[j] = std::sqrt(nn.back().first);
    }
    return out;
}

std::vector<double> kth_neighbor_distance(const RowMatrix& pts, int q) {
    return kth_neighbor_distance_impl<true>(pts, q);
}
std::vector<double> kth_neighbor_distance_serial(const RowMatrix& pts, int q) {
    return kth_neighbor_distance_impl<false>(pts, q);
}

template <bool Parallel>
static std::vector<std::vector<int>> nearest_neighbors_impl(const RowMatrix& pts, int q) {
    const Index m = pts.rows();
    if (q < 1 || q > m - 1)
        throw std::invalid_argument("nearest_neighbors: need 1 <= q <= m-1");
    std::vector<std::vector<int>> out(m);
#pragma omp parallel for schedule(static) if (Parallel)
    for (Index j = 0; j < m; ++j) {
        std::vector<std::pair<double, int>> nn;
        std::vector<double> scratch;
        q_nearest_of_point(pts, j, q, nn, scratch);
        out[j].resize(q);
        for (int i = 0; i < q; ++i) out[j][i] = nn[i].second;
    }
    return out;
}

std::vector<std::vector<int>> nearest_neighbors(const RowMatrix& pts, int q) {
    return nearest_neighbors_impl<true>(pts, q);
}
std::vector<std::vector<int>> nearest_neighbors_serial(const RowMatrix& pts, int q) {
    return nearest_neighbors_impl<false>(pts, q);
}

template <bool Parallel>
static std::vector<std::vector<int>> radius_neighbors_impl(const RowMatrix& pts,
                                                           double eps) {
    const Index m = pts.rows();
    const double eps2 = eps * eps;
    std::vector<std::vector<int>> out(m);
#pragma omp parallel for schedule(static) if (Parallel)
    for (Index j = 0; j < m; ++j) {
        std::vector<double> scratch;
        squared_dists_to_all(pts, j, scratch);
        for (Index l = 0; l < m; ++l)
            if (l != j && scratch[l] <= eps2) out[j].push_back(static_cast<int>(l));
    }
    return out;
}

std::vector<std::vector<int>> radius_neighbors(const RowMatrix& pts, double eps) {
    return radius_neighbors_impl<true>(pts, eps);
}
std::vector<std::vector<int>> radius_neighbors_serial(const RowMatrix& pts, double eps) {
    return radius_neighbors_impl<false>(pts, eps);
}

template <bool Parallel>
static void assign_to_centers_impl(const RowMatrix& D, const Matrix& X,
                                   std::vector<int>& labels,
                                   std::vector<double>& dist2) {
    const Index m = D.rows();
    const Index k = X.cols();
    if (D.cols() != X.rows())
        throw std::invalid_argument("assign_to_centers: dimension mismatch");
    labels.resize(m);
    dist2.resize(m);
#pragma omp parallel for schedule(static) if (Parallel)
    for (Index j = 0; j < m; ++j) {
        int best = 0;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (Index c = 0; c < k; ++c) {
            const double d2 = (D.row(j).transpose() - X.col(c)).squaredNorm();
            if (d2 < best_d2) {
                best_d2 = d2;
                best = static_cast<int>(c);
            }
        }
        labels[j] = best;
        dist2[j] = best_d2;
    }
}

void assign_to_centers(const RowMatrix& D, const Matrix& X,
                       std::vector<int>& labels, std::vector<double>& dist2) {
    assign_to_centers_impl<true>(D, X, labels, dist2);
}
void assign_to_centers_serial(const RowMatrix& D, const Matrix& X,
                              std::vector<int>& labels, std::vector<double>& dist2) {
    assign_to_centers_impl<false>(D, X, labels, dist2);
}

}  // namespace specialk::kernels
