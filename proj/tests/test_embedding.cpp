#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "specialk/dataset.hpp"
#include "specialk/embedding.hpp"
#include "specialk/errors.hpp"
#include "specialk/rng.hpp"

#include "test_util.hpp"

using namespace specialk;

namespace {

SimilarityMatrix random_sparse_symmetric(Index m, double density, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Eigen::Triplet<double>> entries;
    for (Index j = 0; j < m; ++j)
        for (Index l = j + 1; l < m; ++l)
            if (rng.uniform() < density) entries.emplace_back(j, l, rng.uniform());
    return SimilarityMatrix::from_triplets(m, entries);
}

}  // namespace

TEST_CASE("identity similarity has unit eigenvalues and orthonormal vectors") {
    std::vector<Eigen::Triplet<double>> entries;
    // a 3-cycle with equal weights has eigenvalues (2, -1, -1) * 0.5
    entries.emplace_back(0, 1, 0.5);
    entries.emplace_back(1, 2, 0.5);
    entries.emplace_back(0, 2, 0.5);
    const auto W = SimilarityMatrix::from_triplets(3, entries);
    const EigenPairs top = truncated_eigen(W, 2);
    CHECK(top.values(0) == doctest::Approx(1.0));
    CHECK(top.values(1) == doctest::Approx(-0.5));
    CHECK((top.vectors.transpose() * top.vectors - Matrix::Identity(2, 2))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
}

TEST_CASE("swap matrix eigenpairs in closed form") {
    std::vector<Eigen::Triplet<double>> entries{{0, 1, 1.0}};
    const auto W = SimilarityMatrix::from_triplets(2, entries);
    const EigenPairs top = truncated_eigen(W, 2);
    CHECK(top.values(0) == doctest::Approx(1.0));
    CHECK(top.values(1) == doctest::Approx(-1.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(top.vectors(0, 0) == doctest::Approx(inv_sqrt2));
    CHECK(top.vectors(1, 0) == doctest::Approx(inv_sqrt2));
    CHECK(top.vectors(0, 1) == doctest::Approx(inv_sqrt2));
    CHECK(top.vectors(1, 1) == doctest::Approx(-inv_sqrt2));
}

TEST_CASE("truncated eigenvalues match the dense oracle on random matrices") {
    const auto W = random_sparse_symmetric(200, 0.05, 31);
    const Index n = 12;
    const EigenPairs top = truncated_eigen(W, n, EigenMethod::dense);

    Eigen::SelfAdjointEigenSolver<Matrix> oracle(W.dense());
    for (Index i = 0; i < n; ++i)
        CHECK(top.values(i) ==
              doctest::Approx(oracle.eigenvalues()(200 - 1 - i)).epsilon(1e-8));
}

TEST_CASE("lanczos path agrees with the dense path") {
    const auto W = random_sparse_symmetric(200, 0.05, 57);
    const Index n = 10;
    const EigenPairs dense = truncated_eigen(W, n, EigenMethod::dense);
    const EigenPairs lanczos = truncated_eigen(W, n, EigenMethod::lanczos);
    CHECK((dense.values - lanczos.values).cwiseAbs().maxCoeff() < 1e-8);
    for (Index i = 0; i < n; ++i)
        CHECK(std::abs(dense.vectors.col(i).dot(lanczos.vectors.col(i))) ==
              doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lanczos handles degenerate spectra through restarts") {
    // two disjoint edges: eigenvalues (1, 1, -1, -1)
    std::vector<Eigen::Triplet<double>> entries{{0, 1, 1.0}, {2, 3, 1.0}};
    const auto W = SimilarityMatrix::from_triplets(4, entries);
    const EigenPairs top = truncated_eigen(W, 2, EigenMethod::lanczos);
    CHECK(top.values(0) == doctest::Approx(1.0));
    CHECK(top.values(1) == doctest::Approx(1.0));
}

TEST_CASE("large matrices take the iterative path automatically") {
    // sparse background plus six planted communities, so the leading
    // eigenvalues separate the way clustered similarity graphs do
    Rng rng(77);
    const Index m = 4200;
    std::vector<Eigen::Triplet<double>> entries;
    for (Index j = 0; j < m; ++j)
        for (int t = 0; t < 3; ++t) {
            const Index l = static_cast<Index>(rng.below(m));
            if (l != j) entries.emplace_back(std::min(j, l), std::max(j, l), 0.2);
        }
    const Index block = m / 6;
    for (Index j = 0; j < m; ++j)
        for (int t = 0; t < 6; ++t) {
            const Index l = (j / block) * block +
                            static_cast<Index>(rng.below(block));
            if (l != j) entries.emplace_back(std::min(j, l), std::max(j, l), 1.0);
        }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.row(), a.col()) < std::tie(b.row(), b.col());
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) {
                                  return a.row() == b.row() && a.col() == b.col();
                              }),
                  entries.end());
    const auto W = SimilarityMatrix::from_triplets(m, entries);

    const Index n = 6;
    const EigenPairs top = truncated_eigen(W, n);  // residuals checked inside
    CHECK((top.vectors.transpose() * top.vectors - Matrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    for (Index i = 1; i < n; ++i) CHECK(top.values(i) <= top.values(i - 1));
}

TEST_CASE("repeated decompositions are identical") {
    const auto W = random_sparse_symmetric(80, 0.1, 3);
    const EigenPairs a = truncated_eigen(W, 5);
    const EigenPairs b = truncated_eigen(W, 5);
    CHECK(same_matrix(a.vectors, b.vectors));
    CHECK(same_matrix(a.values, b.values));
}

TEST_CASE("truncated_eigen rejects n out of range") {
    const auto W = random_sparse_symmetric(10, 0.3, 1);
    CHECK_THROWS_AS(truncated_eigen(W, 11), std::invalid_argument);
    CHECK_THROWS_AS(truncated_eigen(W, 0), std::invalid_argument);
}

TEST_CASE("projection scales absolute eigenvector entries by sqrt eigenvalue") {
    Vector values(1);
    values << 4.0;
    Matrix vectors(2, 1);
    vectors << 0.6, -0.8;
    const Embedding emb = project_embedding(values, vectors);
    CHECK(emb.D(0, 0) == doctest::Approx(1.2));
    CHECK(emb.D(1, 0) == doctest::Approx(1.6));

    Vector zero(1);
    zero << 0.0;
    const Embedding z = project_embedding(zero, vectors);
    CHECK(z.D.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projection is entrywise nonnegative and reconstructs low-rank W") {
    Rng rng(13);
    // W = v v^T with v >= 0: rank one, nonnegative eigenvector
    Vector v(30);
    for (Index j = 0; j < 30; ++j) v(j) = rng.uniform() + 0.05;
    const Matrix W = v * v.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> es(W);
    Vector values = es.eigenvalues().tail(2).reverse();
    Matrix vectors(30, 2);
    vectors.col(0) = es.eigenvectors().col(29);
    vectors.col(1) = es.eigenvectors().col(28);
    const Embedding emb = project_embedding(values, vectors);
    CHECK(emb.D.minCoeff() >= 0.0);
    CHECK((emb.D * emb.D.transpose() - W).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("reconstruction residual shrinks as n grows") {
    const auto W = random_sparse_symmetric(60, 0.2, 19);
    const Matrix dense = W.dense();
    double prev = dense.norm() + 1.0;
    for (Index n : {5, 15, 30, 60}) {
        const EigenPairs top = truncated_eigen(W, n);
        const Matrix approx = top.vectors *
                              top.values.asDiagonal() * top.vectors.transpose();
        const double resid = (dense - approx).norm();
        CHECK(resid <= prev + 1e-9);
        prev = resid;
    }
    CHECK(prev < 1e-7);  // full spectrum reconstructs W
}

TEST_CASE("decorrelation drops duplicated and monotone-equivalent columns") {
    Rng rng(23);
    RowMatrix D(500, 3);
    for (Index j = 0; j < 500; ++j) {
        D(j, 0) = rng.uniform();
        D(j, 1) = D(j, 0);              // identical
        D(j, 2) = std::exp(D(j, 0));    // strictly increasing transform
    }
    Embedding emb;
    emb.D = D;
    emb.eigenvalues = Vector::Ones(3);
    emb.eigenvectors = Matrix::Zero(500, 3);
    emb.kept_columns = {0, 1, 2};

    const Embedding filtered = decorrelate_columns(emb, 0.95);
    CHECK(filtered.n() == 1);
    CHECK(filtered.kept_columns == std::vector<Index>{0});
}

TEST_CASE("independent columns survive decorrelation") {
    Rng rng(29);
    RowMatrix D(500, 8);
    for (Index j = 0; j < 500; ++j)
        for (Index i = 0; i < 8; ++i) D(j, i) = rng.normal();
    Embedding emb;
    emb.D = D;
    emb.eigenvalues = Vector::Ones(8);
    emb.eigenvectors = Matrix::Zero(500, 8);
    emb.kept_columns = {0, 1, 2, 3, 4, 5, 6, 7};
    const Embedding filtered = decorrelate_columns(emb, 0.95);
    CHECK(filtered.n() == 8);
}

TEST_CASE("spearman is rank-based with average ranks on ties") {
    Vector a(4), b(4);
    a << 1.0, 2.0, 3.0, 4.0;
    b << 10.0, 20.0, 30.0, 40.0;
    CHECK(spearman(a, b) == doctest::Approx(1.0));
    b << 40.0, 30.0, 20.0, 10.0;
    CHECK(spearman(a, b) == doctest::Approx(-1.0));
    // tie in a: ranks (1.5, 1.5, 3, 4) against (1, 2, 3, 4);
    // Pearson of the rank vectors = 4.5 / sqrt(4.5 * 5)
    a << 1.0, 1.0, 2.0, 3.0;
    b << 1.0, 2.0, 3.0, 4.0;
    const double expected = 4.5 / std::sqrt(22.5);
    CHECK(spearman(a, b) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("embedding export writes the matrix and its sidecar") {
    Vector values(2);
    values << 2.0, 1.0;
    Matrix vectors(3, 2);
    vectors << 0.6, 0.1, -0.8, 0.2, 0.0, 0.9;
    Embedding emb = project_embedding(values, vectors);
    emb.kept_columns = {0, 3};

    const auto dir = std::filesystem::temp_directory_path();
    const auto csv = dir / "specialk_embed.csv";
    save_embedding(emb, csv);

    std::ifstream in(csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 1);
        ++rows;
    }
    CHECK(rows == 3);

    std::ifstream side(dir / "specialk_embed.json");
    std::stringstream ss;
    ss << side.rdbuf();
    const std::string sidecar = ss.str();
    CHECK(sidecar.find("\"eigenvalues\"") != std::string::npos);
    CHECK(sidecar.find("\"kept_columns\"") != std::string::npos);
    CHECK(sidecar.find("3") != std::string::npos);

    std::filesystem::remove(csv);
    std::filesystem::remove(dir / "specialk_embed.json");
}
