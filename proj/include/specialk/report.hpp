#pragma once

#include <filesystem>
#include <string>

namespace specialk {

/// Collect estimate JSON reports (schema "specialk/1") from a directory and
/// render a per-k table of NMI and p per preset, the selected k highlighted.
/// Returns the Markdown text; when csv_path is nonempty the same cells go to
/// a CSV file.
std::string render_report(const std::filesystem::path& results_dir,
                          const std::filesystem::path& csv_path = {});

}  // namespace specialk
