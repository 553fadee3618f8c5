#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "specialk/errors.hpp"
#include "specialk/eval.hpp"
#include "specialk/experiment.hpp"
#include "specialk/report.hpp"

namespace fs = std::filesystem;
using namespace specialk;

namespace {

std::string noise_tag(double noise) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", noise);
    return buf;
}

struct CommonFlags {
    std::string shape = "blobs";
    long long m = 1500;
    std::vector<double> noise;
    int replicates = 5;
    std::string preset = "wr";
    long long n = 200;
    double alpha = 0.01;
    int k_max = 5;
    int pairs_budget = 10;
    bool decorrelate = false;
    std::string pair_score = "between_similarity";
    bool laplacian = false;
    std::uint64_t seed = 0;
    std::string out = ".";
};

void add_estimator_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--n", flags.n, "Embedding dimensionality");
    cmd->add_option("--alpha", flags.alpha, "Significance level");
    cmd->add_option("--k-max", flags.k_max, "Largest k to consider");
    cmd->add_option("--pairs-budget", flags.pairs_budget,
                    "Cluster pairs tested per k, ranked by between-similarity");
    cmd->add_flag("--decorrelate", flags.decorrelate,
                  "Drop embedding columns with |Spearman rho| > 0.95");
    cmd->add_option("--pair-score", flags.pair_score,
                    "Pair ranking: between_similarity|normalized_by_sizes|normalized_by_union");
    cmd->add_flag("--laplacian", flags.laplacian,
                  "Decompose -L = W - diag(W1) instead of W");
    cmd->add_option("--seed", flags.seed, "Base seed");
}

EstimatorOptions make_options(const CommonFlags& flags) {
    EstimatorOptions opts;
    opts.n = flags.n;
    opts.alpha = flags.alpha;
    opts.k_max = flags.k_max;
    opts.pairs_budget = flags.pairs_budget;
    opts.decorrelate = flags.decorrelate;
    opts.seed = flags.seed;
    opts.pair_score = pair_score_from_string(flags.pair_score);
    opts.neg_laplacian = flags.laplacian;
    return opts;
}

ExperimentConfig make_config(const CommonFlags& flags) {
    ExperimentConfig config;
    config.shape = shape_from_string(flags.shape);
    config.m = flags.m;
    config.noise_grid = flags.noise;
    config.replicates = flags.replicates;
    config.n = flags.n;
    config.alpha = flags.alpha;
    config.k_max = flags.k_max;
    config.pairs_budget = flags.pairs_budget;
    config.seed_base = flags.seed;
    // the moons similarity structure needs the correlation filter
    config.decorrelate = flags.decorrelate || config.shape == ShapeTag::moons;
    config.output_dir = flags.out;
    return config;
}

int cmd_generate(const CommonFlags& flags) {
    ExperimentConfig config = make_config(flags);
    if (config.noise_grid.empty()) config.noise_grid = default_noise_grid();
    fs::create_directories(config.output_dir);
    for (int xi = 0; xi < static_cast<int>(config.noise_grid.size()); ++xi) {
        const double noise = config.noise_grid[xi];
        for (int rep = 0; rep < config.replicates; ++rep) {
            const std::uint64_t seed =
                replicate_seed(config.seed_base, config.shape, rep);
            const Dataset data = generate_shape(config.shape, config.m, noise, seed);
            const fs::path path =
                config.output_dir / (to_string(config.shape) + "_" +
                                     noise_tag(noise) + "_" + std::to_string(rep) +
                                     ".csv");
            save_csv(data, path);
        }
    }
    return 0;
}

int cmd_estimate(const std::string& dataset_path, bool has_labels,
                 const CommonFlags& flags) {
    if (!fs::exists(dataset_path)) {
        std::cerr << "specialk: no such file: " << dataset_path << "\n";
        return 2;
    }
    const Dataset data = load_csv(dataset_path, has_labels);
    const GraphPreset preset = preset_from_string(flags.preset);
    EstimatorOptions opts = make_options(flags);

    const EstimateRun run = run_estimate(data, preset, opts);

    fs::create_directories(flags.out);
    const std::string stem = fs::path(dataset_path).stem().string() + "_" +
                             to_string(preset);

    EstimateReportInputs inputs;
    inputs.dataset = dataset_path;
    inputs.preset = to_string(preset);
    inputs.m = data.m();
    inputs.d = data.d();
    inputs.options = opts;
    inputs.truth_labels = data.labels;
    inputs.eigengap_k = run.eigengap_k;
    inputs.labels_csv = stem + "_labels.csv";

    write_labels_csv(run.result, fs::path(flags.out) / inputs.labels_csv);
    const fs::path json_path = fs::path(flags.out) / (stem + ".json");
    write_json(estimate_to_json(run.result, inputs), json_path);

    std::cout << "k_selected=" << run.result.k_selected << " ("
              << to_string(run.result.stopped_reason) << "), report "
              << json_path.string() << "\n";
    return 0;
}

int cmd_sweep_noise(const CommonFlags& flags) {
    ExperimentConfig config = make_config(flags);
    fs::create_directories(config.output_dir);
    const auto rows = sweep_noise(config);
    const fs::path csv = config.output_dir /
                         (to_string(config.shape) + "_noise_sweep.csv");
    const fs::path svg = config.output_dir /
                         (to_string(config.shape) + "_noise_sweep.svg");
    write_sweep_csv(rows, csv, "noise");
    write_sweep_svg(rows, svg, "noise");
    std::cout << "wrote " << csv.string() << " and " << svg.string() << "\n";
    for (const auto& row : rows)
        if (row.status != "ok")
            std::cerr << "cell (" << to_string(row.preset) << ", " << row.x << ", "
                      << row.replicate << "): " << row.status << "\n";
    return 0;
}

int cmd_sweep_n(const CommonFlags& flags, std::vector<long long> n_grid,
                double noise) {
    ExperimentConfig config = make_config(flags);
    fs::create_directories(config.output_dir);
    std::vector<Index> grid;
    for (long long n : n_grid) grid.push_back(n);
    if (grid.empty()) grid = default_n_grid();
    const auto rows = sweep_n(config, grid, noise);
    const fs::path csv = config.output_dir /
                         (to_string(config.shape) + "_n_sweep.csv");
    write_sweep_csv(rows, csv, "n");
    std::cout << "wrote " << csv.string() << "\n";
    return 0;
}

int cmd_report(const std::string& results_dir, const std::string& csv_out) {
    const std::string table = render_report(results_dir, csv_out);
    std::cout << table;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("SPECIALK_THREADS")) {
        const long threads = std::strtol(env, nullptr, 10);
        if (threads >= 1) omp_set_num_threads(static_cast<int>(threads));
    }

    CLI::App app{"Spectral clustering with automatic selection of k"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* generate = app.add_subcommand("generate", "Write synthetic dataset CSVs");
    generate->add_option("--shape", flags.shape, "moons|circles|blobs|random");
    generate->add_option("--m", flags.m, "Points per dataset");
    generate->add_option("--noise", flags.noise, "Noise levels (default full grid)");
    generate->add_option("--replicates", flags.replicates, "Datasets per noise level");
    generate->add_option("--seed", flags.seed, "Base seed");
    generate->add_option("--out", flags.out, "Output directory");

    std::string dataset_path;
    bool has_labels = false;
    auto* estimate =
        app.add_subcommand("estimate", "Estimate k for a dataset CSV");
    estimate->add_option("dataset", dataset_path, "Input CSV")->required();
    estimate->add_flag("--labels", has_labels, "Last CSV column is a label");
    estimate->add_option("--preset", flags.preset, "Similarity preset: wr|wc");
    estimate->add_option("--out", flags.out, "Output directory");
    add_estimator_flags(estimate, flags);

    auto* sweep_noise_cmd =
        app.add_subcommand("sweep-noise", "Noise grid x replicates, both presets");
    sweep_noise_cmd->add_option("--shape", flags.shape, "moons|circles|blobs|random");
    sweep_noise_cmd->add_option("--m", flags.m, "Points per dataset");
    sweep_noise_cmd->add_option("--noise", flags.noise,
                                "Noise levels (default full grid)");
    sweep_noise_cmd->add_option("--replicates", flags.replicates,
                                "Datasets per noise level");
    sweep_noise_cmd->add_option("--out", flags.out, "Output directory");
    add_estimator_flags(sweep_noise_cmd, flags);

    std::vector<long long> n_grid;
    double sweep_noise_level = 0.1;
    auto* sweep_n_cmd =
        app.add_subcommand("sweep-n", "Embedding-size grid at fixed noise");
    sweep_n_cmd->add_option("--shape", flags.shape, "moons|circles|blobs|random");
    sweep_n_cmd->add_option("--m", flags.m, "Points per dataset");
    sweep_n_cmd->add_option("--n-grid", n_grid, "n values (default 50..450 by 50)");
    sweep_n_cmd->add_option("--noise", sweep_noise_level, "Fixed noise level");
    sweep_n_cmd->add_option("--replicates", flags.replicates, "Replicates");
    sweep_n_cmd->add_option("--out", flags.out, "Output directory");
    add_estimator_flags(sweep_n_cmd, flags);

    std::string results_dir, report_csv;
    auto* report = app.add_subcommand("report", "Per-k NMI/p table from reports");
    report->add_option("results", results_dir, "Directory of estimate JSONs")
        ->required();
    report->add_option("--csv", report_csv, "Also write the table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*generate) return cmd_generate(flags);
        if (*estimate) return cmd_estimate(dataset_path, has_labels, flags);
        if (*sweep_noise_cmd) return cmd_sweep_noise(flags);
        if (*sweep_n_cmd) return cmd_sweep_n(flags, n_grid, sweep_noise_level);
        if (*report) return cmd_report(results_dir, report_csv);
    } catch (const numeric_error& e) {
        std::cerr << "specialk: numeric error: " << e.what() << "\n";
        return 1;
    } catch (const parse_error& e) {
        std::cerr << "specialk: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "specialk: invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "specialk: error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
