#include "specialk/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "specialk/errors.hpp"
#include "specialk/rng.hpp"

#include <nlohmann/json.hpp>

namespace specialk {

namespace {

constexpr Index kDenseLimit = 4096;

// The symmetric operator being decomposed: W itself or -L = W - diag(W1).
struct SpectrumOp {
    const SimilarityMatrix& W;
    bool neg_laplacian;

    Index rows() const { return W.rows(); }
    Vector apply(const Vector& x) const {
        return neg_laplacian ? W.neg_laplacian_apply(x) : W.apply(x);
    }
    Matrix dense() const {
        Matrix A = W.dense();
        if (neg_laplacian) A.diagonal() -= W.degrees();
        return A;
    }
};

// Columns sign-fixed so the entry of largest magnitude (first on ties) is
// positive; makes the decomposition deterministic up to the solver.
void fix_signs(Matrix& V) {
    for (Index i = 0; i < V.cols(); ++i) {
        Index arg = 0;
        double best = -1.0;
        for (Index j = 0; j < V.rows(); ++j) {
            const double mag = std::abs(V(j, i));
            if (mag > best) {
                best = mag;
                arg = j;
            }
        }
        if (V(arg, i) < 0.0) V.col(i) = -V.col(i);
    }
}

void check_residuals(const SpectrumOp& op, const Vector& vals, const Matrix& vecs) {
    for (Index i = 0; i < vals.size(); ++i) {
        const Vector r = op.apply(vecs.col(i)) - vals(i) * vecs.col(i);
        const double tol = 1e-6 * std::max(1.0, std::abs(vals(i)));
        if (r.norm() > tol) {
            std::ostringstream msg;
            msg << "truncated_eigen: residual " << r.norm() << " for eigenvalue "
                << vals(i) << " exceeds " << tol;
            throw numeric_error(msg.str());
        }
    }
}

EigenPairs dense_topn(const SpectrumOp& op, Index n) {
    const Index m = op.rows();
    Matrix A = op.dense();
    Vector vals(m);
    Matrix vecs(m, n);
    std::vector<lapack_int> isuppz(2 * std::max<Index>(Index{1}, n));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dsyevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', static_cast<lapack_int>(m), A.data(),
        static_cast<lapack_int>(m), 0.0, 0.0,
        static_cast<lapack_int>(m - n + 1), static_cast<lapack_int>(m), 0.0,
        &found, vals.data(), vecs.data(), static_cast<lapack_int>(m),
        isuppz.data());
    if (info != 0 || found != n) {
        std::ostringstream msg;
        msg << "truncated_eigen: dense solver failed (info=" << info
            << ", found=" << found << " of " << n << ")";
        throw numeric_error(msg.str());
    }
    // dsyevr returns ascending; flip to descending
    EigenPairs out;
    out.values.resize(n);
    out.vectors.resize(m, n);
    for (Index i = 0; i < n; ++i) {
        out.values(i) = vals(n - 1 - i);
        out.vectors.col(i) = vecs.col(n - 1 - i);
    }
    return out;
}

// Lanczos with full reorthogonalization against the whole basis. Suited to
// large sparse W where only the algebraically largest part of the spectrum
// is needed; the dense path stays the reference below kDenseLimit.
EigenPairs lanczos_topn(const SpectrumOp& op, Index n) {
    const Index m = op.rows();
    const Index max_dim = std::min<Index>(m, std::max<Index>(6 * n + 120, Index{320}));
    const double res_tol = 1e-8;
    const double breakdown = 1e-13;

    Matrix basis(m, max_dim);
    std::vector<double> alpha, beta;  // projected tridiagonal (beta=0 at restarts)

    Rng rng(0x5eedba5eULL ^ static_cast<std::uint64_t>(m));
    auto random_orthogonal = [&](Index dim) -> Vector {
        Vector v(m);
        for (Index j = 0; j < m; ++j) v(j) = rng.normal();
        if (dim > 0)
            for (int pass = 0; pass < 2; ++pass)
                v -= basis.leftCols(dim) * (basis.leftCols(dim).transpose() * v);
        return v;
    };

    basis.col(0) = random_orthogonal(0).normalized();

    Vector ritz_vals;
    Matrix ritz_coeffs;
    auto solve_projected = [&](Index d) {
        Matrix T = Matrix::Zero(d, d);
        for (Index i = 0; i < d; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < d) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(T);
        ritz_vals = es.eigenvalues();  // ascending
        ritz_coeffs = es.eigenvectors();
    };
    auto top_n_converged = [&](Index d, double next_beta) {
        if (d < n) return false;
        for (Index i = 0; i < n; ++i) {
            const Index col = d - 1 - i;
            const double resid = std::abs(next_beta * ritz_coeffs(d - 1, col));
            if (resid > res_tol * std::max(1.0, std::abs(ritz_vals(col))))
                return false;
        }
        return true;
    };

    auto top_n_values = [&](Index d) {
        Vector top(n);
        for (Index i = 0; i < n; ++i) top(i) = ritz_vals(d - 1 - i);
        return top;
    };

    Index dim = 0;
    bool converged = false;
    Vector previous_block_top;  // top-n snapshot at the last breakdown
    for (Index it = 0; it < max_dim; ++it) {
        Vector w = op.apply(basis.col(it));
        alpha.push_back(basis.col(it).dot(w));
        for (int pass = 0; pass < 2; ++pass)
            w -= basis.leftCols(it + 1) * (basis.leftCols(it + 1).transpose() * w);
        double b = w.norm();
        dim = it + 1;

        if (b < breakdown) {
            // an invariant subspace closed; its Ritz pairs are exact, but a
            // repeated eigenvalue may own further copies outside it. Accept
            // once a fresh block leaves the top n unchanged, or the whole
            // space is spanned.
            if (dim >= n) {
                solve_projected(dim);
                const Vector top = top_n_values(dim);
                if (previous_block_top.size() == n &&
                    (top - previous_block_top).cwiseAbs().maxCoeff() <=
                        1e-12 * std::max(1.0, top.cwiseAbs().maxCoeff())) {
                    converged = true;
                    break;
                }
                previous_block_top = top;
            }
            w = random_orthogonal(dim);
            b = w.norm();
            if (b < breakdown) {
                // nothing left to explore: the projected problem is exact
                if (dim >= n) converged = true;
                break;
            }
            if (dim >= max_dim) break;
            beta.push_back(0.0);
            basis.col(dim) = w / b;
            continue;
        }

        const bool final_it = dim == max_dim;
        if (dim >= n && (final_it || (dim - n) % 8 == 0)) {
            solve_projected(dim);
            if (top_n_converged(dim, b)) {
                converged = true;
                break;
            }
        }
        beta.push_back(b);
        if (dim < max_dim) basis.col(dim) = w / b;
    }

    if (!converged) {
        std::ostringstream msg;
        msg << "truncated_eigen: Lanczos did not converge after " << dim
            << " iterations";
        throw numeric_error(msg.str());
    }

    EigenPairs out;
    out.values.resize(n);
    out.vectors.resize(m, n);
    for (Index i = 0; i < n; ++i) {
        const Index col = dim - 1 - i;
        out.values(i) = ritz_vals(col);
        out.vectors.col(i) = basis.leftCols(dim) * ritz_coeffs.col(col);
        out.vectors.col(i).normalize();
    }
    return out;
}

}  // namespace

EigenPairs truncated_eigen(const SimilarityMatrix& W, Index n, EigenMethod method,
                           bool neg_laplacian) {
    const Index m = W.rows();
    if (n < 1 || n > m)
        throw std::invalid_argument("truncated_eigen: need 1 <= n <= m");

    if (method == EigenMethod::automatic)
        method = m <= kDenseLimit ? EigenMethod::dense : EigenMethod::lanczos;

    const SpectrumOp op{W, neg_laplacian};
    EigenPairs out =
        method == EigenMethod::dense ? dense_topn(op, n) : lanczos_topn(op, n);
    fix_signs(out.vectors);
    check_residuals(op, out.values, out.vectors);
    return out;
}

Embedding project_embedding(const Vector& eigenvalues, const Matrix& eigenvectors) {
    if (eigenvalues.size() != eigenvectors.cols())
        throw std::invalid_argument("project_embedding: shape mismatch");
    Embedding out;
    out.eigenvalues = eigenvalues;
    out.eigenvectors = eigenvectors;
    out.D.resize(eigenvectors.rows(), eigenvectors.cols());
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        const double scale = std::sqrt(std::abs(eigenvalues(i)));
        out.D.col(i) = eigenvectors.col(i).cwiseAbs() * scale;
    }
    out.kept_columns.resize(eigenvalues.size());
    std::iota(out.kept_columns.begin(), out.kept_columns.end(), Index{0});
    return out;
}

namespace {

// average ranks, ties get the mean of the positions they straddle
Vector average_ranks(const Vector& x) {
    const Index m = x.size();
    std::vector<Index> order(m);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return x(a) < x(b); });
    Vector ranks(m);
    Index i = 0;
    while (i < m) {
        Index j = i;
        while (j + 1 < m && x(order[j + 1]) == x(order[i])) ++j;
        const double r = 0.5 * double(i + j) + 1.0;
        for (Index t = i; t <= j; ++t) ranks(order[t]) = r;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("spearman: length mismatch");
    const Index m = a.size();
    if (m < 2) throw std::invalid_argument("spearman: need length >= 2");
    const Vector ra = average_ranks(a), rb = average_ranks(b);
    const Vector ca = ra.array() - ra.mean();
    const Vector cb = rb.array() - rb.mean();
    const double denom = ca.norm() * cb.norm();
    if (denom == 0.0) return 0.0;  // a constant column correlates with nothing
    return ca.dot(cb) / denom;
}

Embedding decorrelate_columns(const Embedding& emb, double rho_max) {
    if (!(rho_max > 0.0 && rho_max <= 1.0))
        throw std::invalid_argument("decorrelate_columns: rho_max must lie in (0,1]");
    const Index n = emb.n();
    std::vector<Index> keep;
    std::vector<Vector> kept_ranks;
    for (Index i = 0; i < n; ++i) {
        const Vector ranks_i = average_ranks(emb.D.col(i));
        const Vector ci = ranks_i.array() - ranks_i.mean();
        const double norm_i = ci.norm();
        bool drop = false;
        for (const Vector& cj : kept_ranks) {
            const double denom = norm_i * cj.norm();
            const double rho = denom == 0.0 ? 0.0 : ci.dot(cj) / denom;
            if (std::abs(rho) > rho_max) {
                drop = true;
                break;
            }
        }
        if (!drop) {
            keep.push_back(i);
            kept_ranks.push_back(ci);
        }
    }
    if (keep.empty()) throw numeric_error("decorrelate_columns: all columns dropped");

    Embedding out;
    out.D.resize(emb.D.rows(), static_cast<Index>(keep.size()));
    out.eigenvalues.resize(static_cast<Index>(keep.size()));
    out.eigenvectors.resize(emb.eigenvectors.rows(), static_cast<Index>(keep.size()));
    out.kept_columns.reserve(keep.size());
    for (size_t t = 0; t < keep.size(); ++t) {
        out.D.col(static_cast<Index>(t)) = emb.D.col(keep[t]);
        out.eigenvalues(static_cast<Index>(t)) = emb.eigenvalues(keep[t]);
        out.eigenvectors.col(static_cast<Index>(t)) = emb.eigenvectors.col(keep[t]);
        out.kept_columns.push_back(emb.kept_columns[keep[t]]);
    }
    return out;
}

void save_embedding(const Embedding& emb, const std::filesystem::path& csv_path) {
    {
        std::ofstream out(csv_path);
        if (!out) throw parse_error(csv_path.string() + ": cannot open for writing");
        char buf[64];
        for (Index j = 0; j < emb.D.rows(); ++j) {
            for (Index i = 0; i < emb.D.cols(); ++i) {
                std::snprintf(buf, sizeof buf, "%.12g", emb.D(j, i));
                if (i) out << ',';
                out << buf;
            }
            out << '\n';
        }
    }
    nlohmann::ordered_json side;
    side["eigenvalues"] = std::vector<double>(
        emb.eigenvalues.data(), emb.eigenvalues.data() + emb.eigenvalues.size());
    side["kept_columns"] = emb.kept_columns;
    std::filesystem::path sidecar = csv_path;
    sidecar.replace_extension(".json");
    std::ofstream out(sidecar);
    if (!out) throw parse_error(sidecar.string() + ": cannot open for writing");
    out << side.dump(2) << '\n';
}

}  // namespace specialk
