#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specialk/dataset.hpp"
#include "specialk/estimator.hpp"
#include "specialk/serialize.hpp"
#include "specialk/similarity.hpp"

namespace specialk {

enum class GraphPreset { WR, WC };

std::string to_string(GraphPreset preset);
GraphPreset preset_from_string(const std::string& name);

/// WR: binary eps-neighborhood adjacency (99% coverage of 10 neighbors).
/// WC: symmetrically normalized 10-NN adjacency.
SimilarityMatrix build_preset_graph(const Dataset& data, GraphPreset preset);

/// The synthetic protocol: a noise grid swept with several replicate
/// datasets per setting, estimated under both graph presets.
struct ExperimentConfig {
    ShapeTag shape = ShapeTag::blobs;
    Index m = 1500;
    std::vector<double> noise_grid;  // defaults to 0..0.225 step 0.025
    int replicates = 5;
    Index n = 200;
    double alpha = 0.01;
    int k_max = 5;
    int pairs_budget = 10;
    std::uint64_t seed_base = 0;
    bool decorrelate = false;  // the moons preset switches this on
    std::filesystem::path output_dir;
};

std::vector<double> default_noise_grid();
std::vector<Index> default_n_grid();

/// Seed stream of one replicate: (seed_base, shape, replicate) -> 64-bit
/// seed. A replicate keeps its stream across the noise grid, so a sweep
/// traces the noise response of the same underlying draw.
std::uint64_t replicate_seed(std::uint64_t seed_base, ShapeTag shape, int replicate);

/// Worker pool width for sweep cells: SPECIALK_THREADS when set (>=1),
/// otherwise the OpenMP default.
int worker_threads();

struct SweepRow {
    ShapeTag shape;
    GraphPreset preset;
    double x = 0.0;  // noise level, or n for the n-sweep
    int replicate = 0;
    int k_selected = 0;
    std::string status;  // "ok" or the error category
};

/// Generate + estimate every (noise, replicate) cell under both presets.
/// Cells run on the worker pool; rows come back sorted by
/// (preset, noise, replicate). Failures land in the row's status.
std::vector<SweepRow> sweep_noise(const ExperimentConfig& config);

/// Estimate across an n grid at a fixed noise level (both presets).
std::vector<SweepRow> sweep_n(const ExperimentConfig& config,
                              const std::vector<Index>& n_grid, double noise = 0.1);

/// Long-format CSV: shape,preset,x,replicate,k_selected,status with the
/// given name for the x column.
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path,
                     const std::string& x_name = "noise");

/// Static scatter of x vs k, mark radius encoding how many replicates
/// agree; one panel per preset.
void write_sweep_svg(const std::vector<SweepRow>& rows,
                     const std::filesystem::path& path,
                     const std::string& x_name = "noise");

/// One full estimate on a dataset under a preset: graph, embedding,
/// estimate; eigengap baseline on the spectrum tracked for reporting.
struct EstimateRun {
    EstimateResult result;
    int eigengap_k = 1;
};

EstimateRun run_estimate(const Dataset& data, GraphPreset preset,
                         const EstimatorOptions& opts);

}  // namespace specialk
