#include "specialk/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "specialk/errors.hpp"
#include "specialk/serialize.hpp"

namespace specialk {

namespace {

struct PerK {
    std::optional<double> nmi;
    std::optional<double> p;
};

struct RunTable {
    std::string preset;
    std::string dataset;
    int k_selected = 1;
    std::map<int, PerK> per_k;
};

std::string fmt(const std::optional<double>& v) {
    if (!v) return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", *v);
    return buf;
}

}  // namespace

std::string render_report(const std::filesystem::path& results_dir,
                          const std::filesystem::path& csv_path) {
    if (!std::filesystem::is_directory(results_dir))
        throw parse_error(results_dir.string() + ": not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(results_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<RunTable> runs;
    for (const auto& file : files) {
        json j = read_json(file);
        if (!j.contains("schema") || j["schema"] != "specialk/1") continue;
        RunTable run;
        run.preset = j.value("preset", "custom");
        run.dataset = j.value("dataset", file.stem().string());
        run.k_selected = j.value("k_selected", 1);
        for (const auto& entry : j["per_k"]) {
            PerK cell;
            if (entry.contains("nmi")) cell.nmi = entry["nmi"].get<double>();
            if (entry.contains("p")) cell.p = entry["p"].get<double>();
            run.per_k[entry["k"].get<int>()] = cell;
        }
        runs.push_back(std::move(run));
    }
    if (runs.empty())
        throw parse_error(results_dir.string() + ": no estimate reports found");

    std::set<int> ks;
    for (const auto& run : runs)
        for (const auto& [k, _] : run.per_k)
            if (k >= 2) ks.insert(k);

    std::ostringstream md;
    md << "| k |";
    for (const auto& run : runs)
        md << ' ' << run.preset << " NMI | " << run.preset << " p |";
    md << "\n|---|";
    for (size_t i = 0; i < runs.size(); ++i) md << "----|----|";
    md << '\n';

    std::ostringstream csv;
    csv << "k";
    for (const auto& run : runs)
        csv << ',' << run.preset << "_nmi," << run.preset << "_p";
    csv << '\n';

    for (int k : ks) {
        md << "| " << k << " |";
        csv << k;
        for (const auto& run : runs) {
            const auto it = run.per_k.find(k);
            const PerK cell = it == run.per_k.end() ? PerK{} : it->second;
            const bool selected = k == run.k_selected;
            const std::string nmi_s = fmt(cell.nmi), p_s = fmt(cell.p);
            if (selected)
                md << " **" << nmi_s << "** | **" << p_s << "** |";
            else
                md << ' ' << nmi_s << " | " << p_s << " |";
            csv << ',' << nmi_s << ',' << p_s;
        }
        md << '\n';
        csv << '\n';
    }

    md << '\n';
    for (const auto& run : runs)
        md << "- " << run.preset << " (" << run.dataset
           << "): selected k = " << run.k_selected << '\n';

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw parse_error(csv_path.string() + ": cannot open for writing");
        out << csv.str();
    }
    return md.str();
}

}  // namespace specialk
