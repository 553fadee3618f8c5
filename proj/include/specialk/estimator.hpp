#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "specialk/bound.hpp"
#include "specialk/embedding.hpp"
#include "specialk/kmeans.hpp"
#include "specialk/similarity.hpp"

namespace specialk {

/// Between-pair score used to pick which cluster pairs get merge-tested.
/// The raw between-similarity y_c1^T (D D^T) y_c2 is the default; the
/// normalized variants are alternatives with no claim of being the
/// canonical reading of "highest cut".
enum class PairScore {
    between_similarity,   // y_c1^T D D^T y_c2
    normalized_by_sizes,  // score / (|y_c1| |y_c2|)
    normalized_by_union,  // score / |J|
};

enum class StoppedReason { bound_exceeded_alpha, k_cap_reached };

std::string to_string(StoppedReason reason);
std::string to_string(PairScore score);
PairScore pair_score_from_string(const std::string& name);

struct EstimatorOptions {
    Index n = 200;
    double alpha = 0.01;
    int k_max = 5;
    int pairs_budget = 10;
    bool decorrelate = false;
    double rho_max = 0.95;
    std::uint64_t seed = 0;
    int restarts = 10;
    PairScore pair_score = PairScore::between_similarity;
    EigenMethod eig_method = EigenMethod::automatic;
    bool neg_laplacian = false;  // decompose -L instead of W
};

struct EstimateResult {
    int k_selected = 1;
    std::map<int, ClusterAssignment> assignments_per_k;
    std::map<int, std::vector<MergeTestReport>> reports_per_k;
    double alpha = 0.01;
    Index n_used = 0;  // embedding columns after optional decorrelation
    StoppedReason stopped_reason = StoppedReason::k_cap_reached;

    /// Largest p among the reports at k; 0 when no report exists.
    double p_max(int k) const;
};

/// Grow k from 1, cluster the embedding, and merge-test the top-scored
/// cluster pairs in rank order. The first pair whose bound exceeds alpha
/// stops the search and the previous model is returned; otherwise the cap
/// is reached. The embedding is computed once, outside the k loop.
EstimateResult estimate_k(const SimilarityMatrix& W, const EstimatorOptions& opts);

inline EstimateResult estimate_k(const SimilarityMatrix& W, Index n, double alpha,
                                 int k_max = 5, int pairs_budget = 10,
                                 bool decorrelate = false, std::uint64_t seed = 0) {
    EstimatorOptions opts;
    opts.n = n;
    opts.alpha = alpha;
    opts.k_max = k_max;
    opts.pairs_budget = pairs_budget;
    opts.decorrelate = decorrelate;
    opts.seed = seed;
    return estimate_k(W, opts);
}

/// Same search on an already-computed embedding.
EstimateResult estimate_k_embedded(const Embedding& emb, const EstimatorOptions& opts);

/// All unordered cluster pairs scored by descending between-pair similarity,
/// ties by lexicographic pair order; at most `budget` pairs returned.
std::vector<std::pair<int, int>> rank_pairs(
    const RowMatrix& D, const ClusterAssignment& Y, int budget,
    PairScore score = PairScore::between_similarity);

/// Baseline: the k just before the largest gap in a descending spectrum
/// (first index on ties). Reported for comparison only.
int eigengap_baseline(const Vector& eigenvalues);

}  // namespace specialk
