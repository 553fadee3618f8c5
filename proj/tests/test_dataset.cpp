#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "specialk/dataset.hpp"
#include "specialk/errors.hpp"

#include "test_util.hpp"

using namespace specialk;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

// distance of a moons point to its generating arc circle
double moon_arc_residual(double x, double y, int label) {
    if (label == 0) return std::hypot(x, y) - 1.0;
    return std::hypot(x - 1.0, y - 0.5) - 1.0;
}

double sample_std(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / double(v.size() - 1));
}

}  // namespace

TEST_CASE("moons with zero noise lie exactly on their arcs") {
    const Dataset data = make_moons(4, 0.0, 123);
    REQUIRE(data.m() == 4);
    for (Index j = 0; j < 4; ++j) {
        CHECK(moon_arc_residual(data.points(j, 0), data.points(j, 1),
                                (*data.labels)[j]) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK((*data.labels)[0] == 0);
    CHECK((*data.labels)[3] == 1);
}

TEST_CASE("moons are deterministic in their arguments") {
    const Dataset a = make_moons(1500, 0.1, 7);
    const Dataset b = make_moons(1500, 0.1, 7);
    CHECK(same_matrix(a.points, b.points));
    const Dataset c = make_moons(1500, 0.1, 8);
    CHECK_FALSE(same_matrix(a.points, c.points));
}

TEST_CASE("moons noise matches the requested sigma through arc residuals") {
    const double noise = 0.1;
    const Dataset data = make_moons(1500, noise, 42);
    std::vector<double> residuals;
    for (Index j = 0; j < data.m(); ++j)
        residuals.push_back(moon_arc_residual(data.points(j, 0), data.points(j, 1),
                                              (*data.labels)[j]));
    // radial component of isotropic Gaussian noise has std = noise
    CHECK(sample_std(residuals) == doctest::Approx(noise).epsilon(0.10));
}

TEST_CASE("moons odd m gives the extra point to the first arc") {
    const Dataset data = make_moons(5, 0.0, 1);
    int outer = 0;
    for (int lab : *data.labels) outer += lab == 0;
    CHECK(outer == 3);
}

TEST_CASE("circles with zero noise have exact radii") {
    const Dataset data = make_circles(4, 0.0, 0.5, 9);
    std::multiset<double> radii;
    for (Index j = 0; j < 4; ++j)
        radii.insert(std::round(std::hypot(data.points(j, 0), data.points(j, 1)) * 1e12) / 1e12);
    CHECK(radii.count(1.0) == 2);
    CHECK(radii.count(0.5) == 2);
}

TEST_CASE("circles radius spread tracks the noise parameter") {
    const double noise = 0.05;
    const Dataset data = make_circles(1000, noise, 0.5, 3);
    std::vector<double> outer, inner;
    for (Index j = 0; j < data.m(); ++j) {
        const double r = std::hypot(data.points(j, 0), data.points(j, 1));
        ((*data.labels)[j] == 0 ? outer : inner).push_back(r);
    }
    CHECK(sample_std(outer) == doctest::Approx(noise).epsilon(0.15));
    CHECK(sample_std(inner) == doctest::Approx(noise).epsilon(0.15));
}

TEST_CASE("circles at high noise overlap in radius") {
    const Dataset data = make_circles(1500, 0.15, 0.5, 11);
    double inner_max = 0.0, outer_min = 10.0;
    for (Index j = 0; j < data.m(); ++j) {
        const double r = std::hypot(data.points(j, 0), data.points(j, 1));
        if ((*data.labels)[j] == 1)
            inner_max = std::max(inner_max, r);
        else
            outer_min = std::min(outer_min, r);
    }
    CHECK(inner_max > outer_min);  // the rings have begun to merge
}

TEST_CASE("circles rejects factor outside (0,1)") {
    CHECK_THROWS_AS(make_circles(10, 0.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_circles(10, 0.0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_moons(1, 0.0, 1), std::invalid_argument);
}

TEST_CASE("blobs structure: labels, split, separation for the pinned seed") {
    const Dataset tiny = make_blobs(3, 0.0, 5);
    std::set<int> ids(tiny.labels->begin(), tiny.labels->end());
    CHECK(ids == std::set<int>{0, 1, 2});

    const Dataset data = make_blobs(1500, 0.1, 1);
    double cx[3] = {0, 0, 0}, cy[3] = {0, 0, 0};
    int counts[3] = {0, 0, 0};
    for (Index j = 0; j < data.m(); ++j) {
        const int c = (*data.labels)[j];
        cx[c] += data.points(j, 0);
        cy[c] += data.points(j, 1);
        ++counts[c];
    }
    CHECK(counts[0] == 500);
    CHECK(counts[1] == 500);
    CHECK(counts[2] == 500);
    for (int c = 0; c < 3; ++c) {
        cx[c] /= counts[c];
        cy[c] /= counts[c];
    }
    double min_center_dist = 1e9;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            min_center_dist = std::min(
                min_center_dist, std::hypot(cx[a] - cx[b], cy[a] - cy[b]));
    double max_within_std = 0.0;
    for (int c = 0; c < 3; ++c) {
        double ss = 0.0;
        for (Index j = 0; j < data.m(); ++j)
            if ((*data.labels)[j] == c)
                ss += std::pow(data.points(j, 0) - cx[c], 2) +
                      std::pow(data.points(j, 1) - cy[c], 2);
        max_within_std = std::max(max_within_std, std::sqrt(ss / (2.0 * counts[c])));
    }
    CHECK(max_within_std < min_center_dist / 2.0);

    const Dataset again = make_blobs(1500, 0.1, 1);
    CHECK(same_matrix(data.points, again.points));
}

TEST_CASE("random points fill the unit square") {
    const Dataset one = make_random(1, 77);
    CHECK(one.points(0, 0) >= 0.0);
    CHECK(one.points(0, 0) < 1.0);

    const Dataset data = make_random(1500, 5);
    CHECK(data.points.col(0).mean() == doctest::Approx(0.5).epsilon(0.1));
    CHECK(data.points.col(1).mean() == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(data.points.col(0).mean() - 0.5) < 0.05);
    CHECK(std::abs(data.points.col(1).mean() - 0.5) < 0.05);
    CHECK(data.label_count() == 1);

    const Dataset again = make_random(1500, 5);
    CHECK(same_matrix(data.points, again.points));
}

TEST_CASE("label cardinality per generator") {
    CHECK(make_moons(40, 0.1, 2).label_count() == 2);
    CHECK(make_circles(40, 0.1, 0.5, 2).label_count() == 2);
    CHECK(make_blobs(40, 0.1, 2).label_count() == 3);
    CHECK(make_random(40, 2).label_count() == 1);
}

TEST_CASE("csv round trip") {
    const fs::path path = temp_file("specialk_test_points.csv");
    {
        std::ofstream out(path);
        out << "0,0\n1,0\n0,1\n";
    }
    const Dataset data = load_csv(path, false);
    CHECK(data.m() == 3);
    CHECK(data.d() == 2);
    CHECK(data.points(1, 0) == 1.0);
    CHECK_FALSE(data.labels.has_value());
    fs::remove(path);
}

TEST_CASE("csv with labels strips the label column") {
    const fs::path path = temp_file("specialk_test_labeled.csv");
    {
        std::ofstream out(path);
        out << "0.5,1.5,0\n2.5,3.5,1\n4.5,5.5,0\n";
    }
    const Dataset data = load_csv(path, true);
    CHECK(data.d() == 2);
    REQUIRE(data.labels.has_value());
    CHECK((*data.labels)[1] == 1);
    fs::remove(path);
}

TEST_CASE("csv errors carry the offending location") {
    const fs::path ragged = temp_file("specialk_test_ragged.csv");
    {
        std::ofstream out(ragged);
        out << "1,2\n3,4,5\n";
    }
    CHECK_THROWS_WITH_AS(load_csv(ragged, false),
                         doctest::Contains("row 2"), parse_error);
    fs::remove(ragged);

    const fs::path bad = temp_file("specialk_test_nonnum.csv");
    {
        std::ofstream out(bad);
        out << "1,2\n3,abc\n";
    }
    CHECK_THROWS_WITH_AS(load_csv(bad, false), doctest::Contains("column 2"),
                         parse_error);
    fs::remove(bad);

    const fs::path empty = temp_file("specialk_test_empty.csv");
    { std::ofstream out(empty); }
    CHECK_THROWS_AS(load_csv(empty, false), parse_error);
    fs::remove(empty);
}

TEST_CASE("save then load preserves shape and labels") {
    const Dataset data = make_blobs(30, 0.05, 3);
    const fs::path path = temp_file("specialk_test_save.csv");
    save_csv(data, path);
    const Dataset loaded = load_csv(path, true);
    CHECK(loaded.m() == data.m());
    CHECK(loaded.d() == data.d());
    CHECK(*loaded.labels == *data.labels);
    CHECK((loaded.points - data.points).cwiseAbs().maxCoeff() < 1e-9);
    fs::remove(path);
}
