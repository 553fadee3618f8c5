#include "specialk/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "specialk/errors.hpp"
#include "specialk/eval.hpp"

namespace specialk {

double round12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json to_json(const MergeTestReport& report) {
    json j;
    j["pair"] = {report.pair.first, report.pair.second};
    j["t"] = round12(report.t);
    j["p"] = round12(report.p);
    j["sigma2"] = round12(report.sigma2);
    j["J_size"] = report.J_size;
    j["decision"] = to_string(report.decision);
    return j;
}

json estimate_to_json(const EstimateResult& result, const EstimateReportInputs& in) {
    json j;
    j["schema"] = "specialk/1";
    j["dataset"] = in.dataset;
    j["preset"] = in.preset;
    j["m"] = in.m;
    j["d"] = in.d;
    j["n"] = in.options.n;
    j["n_used"] = result.n_used;
    j["alpha"] = round12(result.alpha);
    j["k_max"] = in.options.k_max;
    j["pairs_budget"] = in.options.pairs_budget;
    j["decorrelate"] = in.options.decorrelate;
    j["pair_score"] = to_string(in.options.pair_score);
    j["seed"] = in.options.seed;
    j["k_selected"] = result.k_selected;
    j["stopped_reason"] = to_string(result.stopped_reason);
    if (in.eigengap_k) j["eigengap_k"] = *in.eigengap_k;

    json per_k = json::array();
    for (const auto& [k, assignment] : result.assignments_per_k) {
        json entry;
        entry["k"] = k;
        entry["objective"] = round12(assignment.objective);
        auto rep_it = result.reports_per_k.find(k);
        if (rep_it != result.reports_per_k.end() && !rep_it->second.empty()) {
            entry["p"] = round12(result.p_max(k));
            json reports = json::array();
            for (const auto& rep : rep_it->second) reports.push_back(to_json(rep));
            entry["reports"] = std::move(reports);
        }
        if (in.truth_labels)
            entry["nmi"] = round12(nmi(assignment.labels, *in.truth_labels));
        per_k.push_back(std::move(entry));
    }
    j["per_k"] = std::move(per_k);

    if (!in.labels_csv.empty()) {
        j["labels_csv"] = in.labels_csv;
        std::vector<int> ks;
        for (const auto& [k, _] : result.assignments_per_k) ks.push_back(k);
        j["labels_columns"] = ks;
    }
    return j;
}

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw parse_error(path.string() + ": write failed");
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path.string() + ": cannot open file");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
    return j;
}

void write_labels_csv(const EstimateResult& result,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    if (result.assignments_per_k.empty()) return;
    const size_t m = result.assignments_per_k.begin()->second.labels.size();
    for (size_t j = 0; j < m; ++j) {
        bool first = true;
        for (const auto& [k, assignment] : result.assignments_per_k) {
            if (!first) out << ',';
            out << assignment.labels[j];
            first = false;
        }
        out << '\n';
    }
    if (!out) throw parse_error(path.string() + ": write failed");
}

}  // namespace specialk
