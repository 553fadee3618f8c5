#pragma once

#include <filesystem>
#include <vector>

#include "specialk/similarity.hpp"
#include "specialk/types.hpp"

namespace specialk {

enum class EigenMethod {
    automatic,  // dense up to 4096 rows, Lanczos above
    dense,
    lanczos,
};

struct EigenPairs {
    Vector values;   // n, sorted descending by algebraic value
    Matrix vectors;  // m x n, orthonormal columns, sign-fixed
};

/// The n algebraically largest eigenvalues of W with orthonormal
/// eigenvectors. Each pair satisfies ||W v - lambda v|| <= 1e-6 max(1,|lambda|).
/// The entry of largest magnitude in each eigenvector is made positive
/// (first such entry on ties), so repeated calls are identical.
/// With neg_laplacian the decomposed operator is -L = W - diag(W1)
/// instead of W itself.
EigenPairs truncated_eigen(const SimilarityMatrix& W, Index n,
                           EigenMethod method = EigenMethod::automatic,
                           bool neg_laplacian = false);

/// Nonnegative spectral embedding with retained spectrum. D approximates W
/// through D D^T when the spectrum is captured.
struct Embedding {
    RowMatrix D;         // m x n, D(j,i) = |V(j,i)| sqrt(|lambda_i|)
    Vector eigenvalues;  // n, descending
    Matrix eigenvectors; // m x n, unit columns
    std::vector<Index> kept_columns;  // original indices surviving decorrelation

    Index n() const { return D.cols(); }
};

Embedding project_embedding(const Vector& eigenvalues, const Matrix& eigenvectors);

/// Greedy column filter in descending-eigenvalue order: a column is dropped
/// when its absolute Spearman rank correlation (average ranks on ties) with
/// any already-kept column exceeds rho_max. The first column is always kept.
Embedding decorrelate_columns(const Embedding& emb, double rho_max = 0.95);

/// Spearman rank correlation of two equal-length columns, average ranks on ties.
double spearman(const Vector& a, const Vector& b);

/// CSV of D (m rows, n columns, 12 significant digits) plus a JSON sidecar
/// {"eigenvalues": [...], "kept_columns": [...]} next to it.
void save_embedding(const Embedding& emb, const std::filesystem::path& csv_path);

}  // namespace specialk
