#include "specialk/estimator.hpp"

#include <algorithm>
#include <stdexcept>

#include "specialk/rng.hpp"

namespace specialk {

std::string to_string(StoppedReason reason) {
    return reason == StoppedReason::bound_exceeded_alpha ? "bound_exceeded_alpha"
                                                         : "k_cap_reached";
}

std::string to_string(PairScore score) {
    switch (score) {
        case PairScore::between_similarity: return "between_similarity";
        case PairScore::normalized_by_sizes: return "normalized_by_sizes";
        case PairScore::normalized_by_union: return "normalized_by_union";
    }
    return "between_similarity";
}

PairScore pair_score_from_string(const std::string& name) {
    if (name == "between_similarity") return PairScore::between_similarity;
    if (name == "normalized_by_sizes") return PairScore::normalized_by_sizes;
    if (name == "normalized_by_union") return PairScore::normalized_by_union;
    throw std::invalid_argument("unknown pair score: " + name);
}

double EstimateResult::p_max(int k) const {
    auto it = reports_per_k.find(k);
    if (it == reports_per_k.end() || it->second.empty()) return 0.0;
    double p = 0.0;
    for (const auto& rep : it->second) p = std::max(p, rep.p);
    return p;
}

std::vector<std::pair<int, int>> rank_pairs(const RowMatrix& D,
                                            const ClusterAssignment& Y,
                                            int budget, PairScore score) {
    if (Y.k < 2) throw std::invalid_argument("rank_pairs: need k >= 2");
    if (budget < 1) throw std::invalid_argument("rank_pairs: budget >= 1");

    // per-cluster Gram vectors g_c = D^T y_c; the pair score is g_c1 . g_c2
    Matrix G = Matrix::Zero(D.cols(), Y.k);
    for (Index j = 0; j < D.rows(); ++j) G.col(Y.labels[j]) += D.row(j).transpose();
    const auto sizes = Y.cluster_sizes();

    struct Scored {
        double score;
        std::pair<int, int> pair;
    };
    std::vector<Scored> scored;
    for (int c1 = 0; c1 < Y.k; ++c1)
        for (int c2 = c1 + 1; c2 < Y.k; ++c2) {
            double s = G.col(c1).dot(G.col(c2));
            switch (score) {
                case PairScore::between_similarity: break;
                case PairScore::normalized_by_sizes:
                    s /= double(sizes[c1]) * double(sizes[c2]);
                    break;
                case PairScore::normalized_by_union:
                    s /= double(sizes[c1] + sizes[c2]);
                    break;
            }
            scored.push_back({s, {c1, c2}});
        }
    std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.pair < b.pair;
    });
    if (static_cast<int>(scored.size()) > budget) scored.resize(budget);

    std::vector<std::pair<int, int>> out;
    out.reserve(scored.size());
    for (const auto& s : scored) out.push_back(s.pair);
    return out;
}

int eigengap_baseline(const Vector& eigenvalues) {
    if (eigenvalues.size() < 2)
        throw std::invalid_argument("eigengap_baseline: need at least 2 eigenvalues");
    int best = 1;
    double best_gap = eigenvalues(0) - eigenvalues(1);
    for (Index i = 1; i + 1 < eigenvalues.size(); ++i) {
        const double gap = eigenvalues(i) - eigenvalues(i + 1);
        if (gap > best_gap) {
            best_gap = gap;
            best = static_cast<int>(i) + 1;
        }
    }
    return best;
}

EstimateResult estimate_k_embedded(const Embedding& emb, const EstimatorOptions& opts) {
    if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
        throw std::invalid_argument("estimate_k: alpha must lie in (0,1)");
    if (opts.k_max < 1) throw std::invalid_argument("estimate_k: k_max >= 1");

    const RowMatrix& D = emb.D;

    EstimateResult result;
    result.alpha = opts.alpha;
    result.n_used = emb.n();

    for (int k = 1; k <= opts.k_max; ++k) {
        KMeansOptions km;
        km.restarts = opts.restarts;
        km.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(k));
        result.assignments_per_k[k] = kmeans_fit(D, k, km);
        const ClusterAssignment& Y = result.assignments_per_k[k];

        if (k < 2) continue;
        result.reports_per_k[k] = {};
        const auto pairs = rank_pairs(D, Y, opts.pairs_budget, opts.pair_score);
        for (const auto& [c1, c2] : pairs) {
            MergeTestReport rep = merge_test(D, Y, c1, c2, opts.alpha);
            result.reports_per_k[k].push_back(rep);
            if (rep.p > opts.alpha) {
                result.k_selected = k - 1;
                result.stopped_reason = StoppedReason::bound_exceeded_alpha;
                return result;
            }
        }
    }
    result.k_selected = opts.k_max;
    result.stopped_reason = StoppedReason::k_cap_reached;
    return result;
}

EstimateResult estimate_k(const SimilarityMatrix& W, const EstimatorOptions& opts) {
    if (opts.n < 1 || opts.n > W.rows())
        throw std::invalid_argument("estimate_k: need 1 <= n <= m");

    const EigenPairs pairs =
        truncated_eigen(W, opts.n, opts.eig_method, opts.neg_laplacian);
    Embedding emb = project_embedding(pairs.values, pairs.vectors);
    if (opts.decorrelate) emb = decorrelate_columns(emb, opts.rho_max);
    return estimate_k_embedded(emb, opts);
}

}  // namespace specialk
