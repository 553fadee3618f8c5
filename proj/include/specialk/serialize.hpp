#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "specialk/estimator.hpp"

namespace specialk {

using json = nlohmann::ordered_json;

/// Round a double through 12 significant digits so serialized output is
/// stable and compact.
double round12(double v);

json to_json(const MergeTestReport& report);

/// Full run report, schema "specialk/1". per_k carries the k-means objective,
/// the merge-test reports with their maximum p, and the NMI against the
/// ground truth when one is supplied.
struct EstimateReportInputs {
    std::string dataset;
    std::string preset;  // "wr", "wc", or "custom"
    Index m = 0;
    Index d = 0;
    EstimatorOptions options;
    std::optional<std::vector<int>> truth_labels;
    std::optional<int> eigengap_k;
    std::string labels_csv;  // relative name of the label file, may be empty
};

json estimate_to_json(const EstimateResult& result, const EstimateReportInputs& in);

void write_json(const json& j, const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);

/// One column per evaluated k (ascending), no header; row j holds point j's
/// cluster ids.
void write_labels_csv(const EstimateResult& result, const std::filesystem::path& path);

}  // namespace specialk
