#include "specialk/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <omp.h>
#include <sstream>

#include "specialk/errors.hpp"
#include "specialk/rng.hpp"

namespace specialk {

std::string to_string(GraphPreset preset) {
    return preset == GraphPreset::WR ? "wr" : "wc";
}

GraphPreset preset_from_string(const std::string& name) {
    if (name == "wr" || name == "WR") return GraphPreset::WR;
    if (name == "wc" || name == "WC") return GraphPreset::WC;
    throw std::invalid_argument("unknown graph preset: " + name);
}

SimilarityMatrix build_preset_graph(const Dataset& data, GraphPreset preset) {
    return preset == GraphPreset::WR ? build_eps_graph(data, 0.99, 10)
                                     : build_knn_graph(data, 10);
}

std::vector<double> default_noise_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 9; ++i) grid.push_back(0.025 * i);
    return grid;
}

std::vector<Index> default_n_grid() {
    std::vector<Index> grid;
    for (Index n = 50; n <= 450; n += 50) grid.push_back(n);
    return grid;
}

std::uint64_t replicate_seed(std::uint64_t seed_base, ShapeTag shape, int replicate) {
    const std::uint64_t s = mix_seed(seed_base, static_cast<std::uint64_t>(shape) + 1);
    return mix_seed(s, static_cast<std::uint64_t>(replicate) + 1);
}

int worker_threads() {
    if (const char* env = std::getenv("SPECIALK_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed >= 1) return static_cast<int>(parsed);
    }
    return omp_get_max_threads();
}

EstimateRun run_estimate(const Dataset& data, GraphPreset preset,
                         const EstimatorOptions& opts) {
    const SimilarityMatrix W = build_preset_graph(data, preset);
    const EigenPairs pairs =
        truncated_eigen(W, opts.n, opts.eig_method, opts.neg_laplacian);

    EstimateRun run;
    run.eigengap_k = pairs.values.size() >= 2 ? eigengap_baseline(pairs.values) : 1;

    Embedding emb = project_embedding(pairs.values, pairs.vectors);
    if (opts.decorrelate) emb = decorrelate_columns(emb, opts.rho_max);
    run.result = estimate_k_embedded(emb, opts);
    return run;
}

namespace {

struct Cell {
    GraphPreset preset;
    int noise_index;  // index into the x grid
    int replicate;
};

std::vector<SweepRow> run_cells(const ExperimentConfig& config,
                                const std::vector<double>& xs,
                                const std::vector<Index>* n_grid, double fixed_noise) {
    std::vector<Cell> cells;
    for (GraphPreset preset : {GraphPreset::WR, GraphPreset::WC})
        for (int xi = 0; xi < static_cast<int>(xs.size()); ++xi)
            for (int rep = 0; rep < config.replicates; ++rep)
                cells.push_back({preset, xi, rep});

    std::vector<SweepRow> rows(cells.size());
    const int threads = worker_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (size_t idx = 0; idx < cells.size(); ++idx) {
        const Cell& cell = cells[idx];
        SweepRow row;
        row.shape = config.shape;
        row.preset = cell.preset;
        row.x = xs[cell.noise_index];
        row.replicate = cell.replicate;
        try {
            const double noise = n_grid ? fixed_noise : xs[cell.noise_index];
            const std::uint64_t seed =
                replicate_seed(config.seed_base, config.shape, cell.replicate);
            const Dataset data = generate_shape(config.shape, config.m, noise, seed);

            EstimatorOptions opts;
            opts.n = n_grid ? (*n_grid)[cell.noise_index] : config.n;
            opts.alpha = config.alpha;
            opts.k_max = config.k_max;
            opts.pairs_budget = config.pairs_budget;
            opts.decorrelate = config.decorrelate;
            opts.seed = seed;
            row.k_selected = run_estimate(data, cell.preset, opts).result.k_selected;
            row.status = "ok";
        } catch (const numeric_error& e) {
            row.k_selected = 0;
            row.status = std::string("numeric-error: ") + e.what();
        } catch (const std::exception& e) {
            row.k_selected = 0;
            row.status = std::string("error: ") + e.what();
        }
        rows[idx] = std::move(row);
    }

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.preset != b.preset) return a.preset < b.preset;
        if (a.x != b.x) return a.x < b.x;
        return a.replicate < b.replicate;
    });
    return rows;
}

}  // namespace

std::vector<SweepRow> sweep_noise(const ExperimentConfig& config) {
    const std::vector<double> grid =
        config.noise_grid.empty() ? default_noise_grid() : config.noise_grid;
    return run_cells(config, grid, nullptr, 0.0);
}

std::vector<SweepRow> sweep_n(const ExperimentConfig& config,
                              const std::vector<Index>& n_grid, double noise) {
    std::vector<double> xs;
    for (Index n : n_grid) xs.push_back(double(n));
    return run_cells(config, xs, &n_grid, noise);
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path, const std::string& x_name) {
    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    out << "shape,preset," << x_name << ",replicate,k_selected,status\n";
    char buf[64];
    for (const SweepRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.12g", row.x);
        out << to_string(row.shape) << ',' << to_string(row.preset) << ',' << buf
            << ',' << row.replicate << ',' << row.k_selected << ',' << row.status
            << '\n';
    }
    if (!out) throw parse_error(path.string() + ": write failed");
}

void write_sweep_svg(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path, const std::string& x_name) {
    // frequency of each (preset, x, k) mark
    std::map<std::tuple<GraphPreset, double, int>, int> freq;
    double x_min = 0.0, x_max = 1.0;
    int k_hi = 1;
    bool first = true;
    for (const SweepRow& row : rows) {
        if (row.status != "ok") continue;
        ++freq[{row.preset, row.x, row.k_selected}];
        if (first) {
            x_min = x_max = row.x;
            first = false;
        }
        x_min = std::min(x_min, row.x);
        x_max = std::max(x_max, row.x);
        k_hi = std::max(k_hi, row.k_selected);
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    k_hi = std::max(k_hi, 5);

    const double panel_w = 360.0, panel_h = 240.0, margin = 44.0, gap = 30.0;
    const double width = 2 * panel_w + 3 * margin + gap;
    const double height = panel_h + 2 * margin;

    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";

    int panel = 0;
    for (GraphPreset preset : {GraphPreset::WR, GraphPreset::WC}) {
        const double x0 = margin + panel * (panel_w + gap + margin);
        const double y0 = margin;
        out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << panel_w
            << "\" height=\"" << panel_h
            << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 - 8
            << "\" text-anchor=\"middle\">" << (preset == GraphPreset::WR ? "W_R" : "W_C")
            << "</text>\n";
        // y gridlines and labels per k
        for (int k = 1; k <= k_hi; ++k) {
            const double y = y0 + panel_h - panel_h * double(k) / double(k_hi + 1);
            out << "<line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x0 + panel_w
                << "\" y2=\"" << y << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
            out << "<text x=\"" << x0 - 6 << "\" y=\"" << y + 4
                << "\" text-anchor=\"end\">" << k << "</text>\n";
        }
        out << "<text x=\"" << x0 + panel_w / 2 << "\" y=\"" << y0 + panel_h + 28
            << "\" text-anchor=\"middle\">" << x_name << "</text>\n";
        for (const auto& [key, count] : freq) {
            if (std::get<0>(key) != preset) continue;
            const double fx =
                x0 + panel_w * (std::get<1>(key) - x_min) / (x_max - x_min) * 0.9 +
                panel_w * 0.05;
            const double fy = y0 + panel_h -
                              panel_h * double(std::get<2>(key)) / double(k_hi + 1);
            out << "<circle cx=\"" << fx << "\" cy=\"" << fy << "\" r=\""
                << 2.0 + 1.6 * count
                << "\" fill=\"#2166ac\" fill-opacity=\"0.55\"/>\n";
        }
        // x tick labels at the extremes
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4g", x_min);
        out << "<text x=\"" << x0 + panel_w * 0.05 << "\" y=\"" << y0 + panel_h + 14
            << "\" text-anchor=\"middle\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.4g", x_max);
        out << "<text x=\"" << x0 + panel_w * 0.95 << "\" y=\"" << y0 + panel_h + 14
            << "\" text-anchor=\"middle\">" << buf << "</text>\n";
        ++panel;
    }
    out << "</svg>\n";
    if (!out) throw parse_error(path.string() + ": write failed");
}

}  // namespace specialk
