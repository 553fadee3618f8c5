#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specialk/types.hpp"

namespace specialk {

enum class ShapeTag { moons, circles, blobs, random_uniform, external };

std::string to_string(ShapeTag tag);
ShapeTag shape_from_string(const std::string& name);

/// A point cloud with optional ground-truth labels.
///
/// Labels, when present, are ids 0..k_true-1 with every id occupied.
/// Generators are pure functions of their arguments: identical
/// (shape, m, noise, seed) yields bit-identical points.
struct Dataset {
    RowMatrix points;  // m x d
    std::optional<std::vector<int>> labels;
    std::uint64_t seed = 0;
    ShapeTag shape = ShapeTag::external;

    Index m() const { return points.rows(); }
    Index d() const { return points.cols(); }
    int label_count() const;
};

/// Two interleaving half-circle arcs of radius 1: the upper arc centered at
/// the origin, the lower arc reflected and offset by (1, 0.5). Points are
/// equally spaced along each arc; i.i.d. Gaussian noise with std `noise` is
/// added per coordinate. The first arc takes the extra point when m is odd.
Dataset make_moons(Index m, double noise, std::uint64_t seed);

/// Two concentric circles of radius 1 and `factor`, half the points each
/// (outer circle takes the extra), equally spaced, Gaussian noise per
/// coordinate. factor must lie in (0, 1).
Dataset make_circles(Index m, double noise, double factor, std::uint64_t seed);
inline Dataset make_circles(Index m, double noise, std::uint64_t seed) {
    return make_circles(m, noise, 0.5, seed);
}

/// Three isotropic Gaussian blobs, base std 1.0, centers drawn uniformly from
/// [-10,10]^2 (fixed by seed), extra Gaussian noise with std `noise` added
/// independently per coordinate. Points are split as evenly as possible.
Dataset make_blobs(Index m, double noise, std::uint64_t seed);

/// m points i.i.d. uniform on the unit square; single ground-truth cluster.
Dataset make_random(Index m, std::uint64_t seed);

/// Dispatch by tag; `noise` is ignored for pure-random data.
Dataset generate_shape(ShapeTag tag, Index m, double noise, std::uint64_t seed);

/// Rectangular numeric CSV, '.' decimal separator, '\n' or '\r\n' newlines,
/// no header. When has_labels, the last column is an integer label and is
/// excluded from the coordinates. Ragged rows, non-numeric cells, or an
/// empty file raise parse_error naming the offending row/column.
Dataset load_csv(const std::filesystem::path& path, bool has_labels);

/// Write points (and the label column if requested and present) with 12
/// significant digits.
void save_csv(const Dataset& data, const std::filesystem::path& path,
              bool include_labels = true);

}  // namespace specialk
