#include "specialk/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specialk/errors.hpp"
#include "specialk/rng.hpp"

namespace specialk {

namespace {

void add_noise(RowMatrix& pts, double noise, Rng& rng) {
    for (Index j = 0; j < pts.rows(); ++j)
        for (Index i = 0; i < pts.cols(); ++i)
            pts(j, i) += noise * rng.normal();
}

void validate_labels(const std::vector<int>& labels, const char* where) {
    std::set<int> ids(labels.begin(), labels.end());
    if (ids.empty() || *ids.begin() < 0 ||
        *ids.rbegin() != static_cast<int>(ids.size()) - 1)
        throw parse_error(std::string(where) +
                          ": label ids must be 0..k-1 with every id occupied");
}

}  // namespace

std::string to_string(ShapeTag tag) {
    switch (tag) {
        case ShapeTag::moons: return "moons";
        case ShapeTag::circles: return "circles";
        case ShapeTag::blobs: return "blobs";
        case ShapeTag::random_uniform: return "random";
        case ShapeTag::external: return "external";
    }
    return "external";
}

ShapeTag shape_from_string(const std::string& name) {
    if (name == "moons") return ShapeTag::moons;
    if (name == "circles") return ShapeTag::circles;
    if (name == "blobs") return ShapeTag::blobs;
    if (name == "random") return ShapeTag::random_uniform;
    if (name == "external") return ShapeTag::external;
    throw std::invalid_argument("unknown shape: " + name);
}

int Dataset::label_count() const {
    if (!labels || labels->empty()) return 0;
    return *std::max_element(labels->begin(), labels->end()) + 1;
}

Dataset make_moons(Index m, double noise, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("make_moons: need m >= 2");
    const Index n_out = (m + 1) / 2;  // first arc takes the extra point
    const Index n_in = m - n_out;

    Dataset out;
    out.points.resize(m, 2);
    out.labels.emplace(m);
    out.seed = seed;
    out.shape = ShapeTag::moons;

    const double pi = std::numbers::pi;
    for (Index j = 0; j < n_out; ++j) {
        const double t = n_out > 1 ? pi * double(j) / double(n_out - 1) : 0.0;
        out.points(j, 0) = std::cos(t);
        out.points(j, 1) = std::sin(t);
        (*out.labels)[j] = 0;
    }
    for (Index j = 0; j < n_in; ++j) {
        const double t = n_in > 1 ? pi * double(j) / double(n_in - 1) : 0.0;
        out.points(n_out + j, 0) = 1.0 - std::cos(t);
        out.points(n_out + j, 1) = 0.5 - std::sin(t);
        (*out.labels)[n_out + j] = 1;
    }

    Rng rng(seed);
    add_noise(out.points, noise, rng);
    return out;
}

Dataset make_circles(Index m, double noise, double factor, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("make_circles: need m >= 2");
    if (!(factor > 0.0 && factor < 1.0))
        throw std::invalid_argument("make_circles: factor must lie in (0,1)");
    const Index n_out = (m + 1) / 2;
    const Index n_in = m - n_out;

    Dataset out;
    out.points.resize(m, 2);
    out.labels.emplace(m);
    out.seed = seed;
    out.shape = ShapeTag::circles;

    const double two_pi = 2.0 * std::numbers::pi;
    for (Index j = 0; j < n_out; ++j) {
        const double t = two_pi * double(j) / double(n_out);
        out.points(j, 0) = std::cos(t);
        out.points(j, 1) = std::sin(t);
        (*out.labels)[j] = 0;
    }
    for (Index j = 0; j < n_in; ++j) {
        const double t = two_pi * double(j) / double(n_in);
        out.points(n_out + j, 0) = factor * std::cos(t);
        out.points(n_out + j, 1) = factor * std::sin(t);
        (*out.labels)[n_out + j] = 1;
    }

    Rng rng(seed);
    add_noise(out.points, noise, rng);
    return out;
}

Dataset make_blobs(Index m, double noise, std::uint64_t seed) {
    if (m < 3) throw std::invalid_argument("make_blobs: need m >= 3");

    Dataset out;
    out.points.resize(m, 2);
    out.labels.emplace(m);
    out.seed = seed;
    out.shape = ShapeTag::blobs;

    Rng rng(seed);
    double cx[3], cy[3];
    for (int c = 0; c < 3; ++c) {
        cx[c] = rng.uniform(-10.0, 10.0);
        cy[c] = rng.uniform(-10.0, 10.0);
    }

    Index j = 0;
    for (int c = 0; c < 3; ++c) {
        const Index count = m / 3 + (c < static_cast<int>(m % 3) ? 1 : 0);
        for (Index p = 0; p < count; ++p, ++j) {
            out.points(j, 0) = cx[c] + rng.normal();
            out.points(j, 1) = cy[c] + rng.normal();
            (*out.labels)[j] = c;
        }
    }
    add_noise(out.points, noise, rng);
    return out;
}

Dataset make_random(Index m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("make_random: need m >= 1");

    Dataset out;
    out.points.resize(m, 2);
    out.labels.emplace(m, 0);
    out.seed = seed;
    out.shape = ShapeTag::random_uniform;

    Rng rng(seed);
    for (Index j = 0; j < m; ++j) {
        out.points(j, 0) = rng.uniform();
        out.points(j, 1) = rng.uniform();
    }
    return out;
}

Dataset generate_shape(ShapeTag tag, Index m, double noise, std::uint64_t seed) {
    switch (tag) {
        case ShapeTag::moons: return make_moons(m, noise, seed);
        case ShapeTag::circles: return make_circles(m, noise, seed);
        case ShapeTag::blobs: return make_blobs(m, noise, seed);
        case ShapeTag::random_uniform: return make_random(m, seed);
        case ShapeTag::external:
            throw std::invalid_argument("cannot generate an external dataset");
    }
    throw std::invalid_argument("unknown shape tag");
}

namespace {

double parse_cell(const std::string& cell, const std::filesystem::path& path,
                  Index row, Index col) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) {
        std::ostringstream msg;
        msg << path.string() << ": row " << (row + 1) << ", column " << (col + 1)
            << ": not a number: '" << cell << "'";
        throw parse_error(msg.str());
    }
    return value;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, bool has_labels) {
    std::ifstream in(path);
    if (!in) throw parse_error(path.string() + ": cannot open file");

    std::vector<std::vector<double>> rows;
    std::string line;
    Index line_no = 0;
    Index width = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            ++line_no;
            continue;
        }
        std::vector<double> row;
        std::string cell;
        std::istringstream ls(line);
        Index col = 0;
        while (std::getline(ls, cell, ','))
            row.push_back(parse_cell(cell, path, line_no, col++));
        if (line.back() == ',')  // trailing comma means an empty final cell
            parse_cell("", path, line_no, col);
        if (width < 0) {
            width = static_cast<Index>(row.size());
        } else if (static_cast<Index>(row.size()) != width) {
            std::ostringstream msg;
            msg << path.string() << ": row " << (line_no + 1) << ": expected "
                << width << " columns, got " << row.size();
            throw parse_error(msg.str());
        }
        rows.push_back(std::move(row));
        ++line_no;
    }
    if (rows.empty()) throw parse_error(path.string() + ": empty file");
    if (has_labels && width < 2)
        throw parse_error(path.string() + ": need at least one coordinate column "
                                          "besides the label column");

    const Index m = static_cast<Index>(rows.size());
    const Index d = has_labels ? width - 1 : width;

    Dataset out;
    out.points.resize(m, d);
    out.shape = ShapeTag::external;
    for (Index j = 0; j < m; ++j)
        for (Index i = 0; i < d; ++i) out.points(j, i) = rows[j][i];

    if (has_labels) {
        std::vector<int> labels(m);
        for (Index j = 0; j < m; ++j) {
            const double raw = rows[j][d];
            const int lab = static_cast<int>(std::llround(raw));
            if (std::abs(raw - lab) > 1e-9) {
                std::ostringstream msg;
                msg << path.string() << ": row " << (j + 1)
                    << ": label column must be integer, got " << raw;
                throw parse_error(msg.str());
            }
            labels[j] = lab;
        }
        validate_labels(labels, path.string().c_str());
        out.labels = std::move(labels);
    }
    return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path,
              bool include_labels) {
    std::ofstream out(path);
    if (!out) throw parse_error(path.string() + ": cannot open for writing");
    const bool with_labels = include_labels && data.labels.has_value();
    char buf[64];
    for (Index j = 0; j < data.m(); ++j) {
        for (Index i = 0; i < data.d(); ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", data.points(j, i));
            if (i) out << ',';
            out << buf;
        }
        if (with_labels) out << ',' << (*data.labels)[j];
        out << '\n';
    }
    if (!out) throw parse_error(path.string() + ": write failed");
}

}  // namespace specialk
