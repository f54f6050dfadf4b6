#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.h"
#include "core/extract.h"

#include <algorithm>
#include <cmath>

using namespace lls;

namespace {

ImageGrid center_peak_3x3(double peak = 4) {
    ImageGrid g(3, 3, 0.0);
    g.at(1, 1) = peak;
    return g;
}

/// 0/1 checkerboard with checker(i,j) = (i+j) % 2, surrounded by a zero frame.
ImageGrid padded_checkerboard(int n) {
    ImageGrid g(n, n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            g.at(i, j) = (i + j) % 2;
    return pad_zero(g);
}

int count_enclosed_samples(const LevelLine& ll, const ImageGrid& g, double value) {
    int count = 0;
    for (int j = 0; j < g.height(); ++j)
        for (int i = 0; i < g.width(); ++i)
            if (g.at(i, j) == value &&
                point_in_polygon({double(i + g.origin_x()), double(j + g.origin_y())},
                                 ll.polygon))
                ++count;
    return count;
}

} // namespace

TEST_CASE("quantized_levels: plain arithmetic sequence inside the open range") {
    ImageGrid g(2, 2, {0, 100, 200, 255});
    auto levels = quantized_levels(g, 1.0, 0.5);
    REQUIRE(levels.size() == 255);
    CHECK(levels.front() == 0.5);
    CHECK(levels.back() == 254.5);
}

TEST_CASE("quantized_levels: checkerboard saddle level gets nudged") {
    ImageGrid g = padded_checkerboard(4);
    auto crit = critical_levels(g);
    CHECK(std::find(crit.begin(), crit.end(), 0.5) != crit.end());
    auto levels = quantized_levels(g, 1.0, 0.5);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0] == doctest::Approx(0.500001).epsilon(1e-9));
}

TEST_CASE("quantized_levels: constant image yields no levels") {
    ImageGrid g(4, 4, 9.0);
    CHECK(quantized_levels(g, 1.0, 0.5).empty());
}

TEST_CASE("extract: peak cell at level 2, axis crossings at distance 0.5") {
    // Linear inversion along the four sample edges: 4(1-s) = 2 at s = 1/2.
    ImageGrid g = center_peak_3x3();
    auto lines = extract_level_lines(g, 2.0, 0.1);
    REQUIRE(lines.size() == 1);
    const LevelLine& ll = lines[0];

    const Point expected[4] = {{0.5, 1}, {1.5, 1}, {1, 0.5}, {1, 1.5}};
    for (const Point& e : expected) {
        bool found = false;
        for (const Point& v : ll.polygon.vertices())
            found = found || dist(v, e) < 1e-12;
        CHECK(found);
    }
    CHECK(ll.upper);
    CHECK(ll.polygon.signed_area() < 0); // upper set kept on the left
    CHECK(count_enclosed_samples(ll, g, 4.0) == 1);
}

TEST_CASE("extract: constant image has no lines at any level") {
    ImageGrid g(4, 4, 5.0);
    CHECK(extract_level_lines(g, 2.5, 0.1).empty());
}

TEST_CASE("extract: critical level is a parameter error naming the cure") {
    ImageGrid g = center_peak_3x3();
    CHECK_THROWS_AS(extract_level_lines(g, 4.0, 0.1), ParamError);
    try {
        extract_level_lines(g, 0.0, 0.1);
    } catch (const ParamError& e) {
        CHECK(std::string(e.what()).find("nudge") != std::string::npos);
    }
}

TEST_CASE("extract: level line reaching the boundary is a geometry error") {
    // Unpadded ramp: iso-lines are open curves ending on the frame.
    ImageGrid g(5, 5, 0.0);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i)
            g.at(i, j) = double(i);
    CHECK_THROWS_AS(extract_level_lines(g, 1.7, 0.1), GeometryError);
}

TEST_CASE("extract: checkerboard below the saddle level joins the high samples") {
    // One dual pixel of the 0/1 checkerboard has saddle level 1/2 with
    // hyperbola branches around the two low corners for levels < 1/2 and
    // around the two high corners for levels > 1/2 (marching squares with
    // the exact disambiguation).
    ImageGrid g = padded_checkerboard(5); // 12 ones, 5 interior zero sites
    const int ones = 12, interior_zeros = 5;

    auto high = extract_level_lines(g, 0.75, 0.05);
    CHECK(int(high.size()) == ones);
    for (const auto& ll : high) {
        CHECK(ll.upper);
        CHECK(count_enclosed_samples(ll, g, 1.0) == 1);
    }

    auto low = extract_level_lines(g, 0.25, 0.05);
    CHECK(int(low.size()) == interior_zeros + 1);
    int pockets = 0, outer = 0;
    for (const auto& ll : low) {
        int inside_ones = count_enclosed_samples(ll, g, 1.0);
        if (inside_ones == ones) {
            ++outer;
            CHECK(ll.upper);
        } else {
            ++pockets;
            CHECK(!ll.upper);
            CHECK(inside_ones == 0);
            CHECK(count_enclosed_samples(ll, g, 0.0) == 1);
        }
    }
    CHECK(outer == 1);
    CHECK(pockets == interior_zeros);
}

TEST_CASE("extract: vertices lie on the level set and within delta of each other") {
    ImageGrid g = pad_zero(center_peak_3x3(7));
    const double delta = 0.2;
    for (double level : {0.8, 2.3, 5.9}) {
        auto lines = extract_level_lines(g, level, delta);
        REQUIRE(!lines.empty());
        for (const auto& ll : lines) {
            const auto& v = ll.polygon.vertices();
            for (size_t i = 0; i < v.size(); ++i) {
                CHECK(std::abs(bilinear_eval(g, v[i].x, v[i].y) - level) < 1e-6);
                CHECK(dist(v[i], v[(i + 1) % v.size()]) <= delta + 1e-9);
            }
            CHECK(!find_self_intersection(ll.polygon).has_value());
        }
    }
}

TEST_CASE("extract: nesting consistency on a padded peak") {
    ImageGrid g = pad_zero(center_peak_3x3(7));
    auto lo = extract_level_lines(g, 1.3, 0.1);
    auto hi = extract_level_lines(g, 4.1, 0.1);
    REQUIRE(lo.size() == 1);
    REQUIRE(hi.size() == 1);
    CHECK(surrounds(hi[0].polygon, lo[0].polygon)); // inner surrounds outer
    // Upper-line case: samples strictly inside the higher line exceed the
    // lower level.
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (point_in_polygon({double(i), double(j)}, hi[0].polygon))
                CHECK(g.at(i + 1, j + 1) > 1.3);
}

TEST_CASE("extract_family: deterministic order, ids, same result threaded") {
    ImageGrid g = pad_zero(center_peak_3x3(7));
    std::vector<double> levels{0.5, 1.5, 2.5, 3.5, 4.5, 5.5, 6.5};
    auto seq = extract_family(g, levels, 0.1, 1);
    auto par = extract_family(g, levels, 0.1, 4);
    REQUIRE(seq.size() == par.size());
    REQUIRE(seq.size() == levels.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].id == int(i));
        CHECK(seq[i].level == par[i].level);
        REQUIRE(seq[i].polygon.size() == par[i].polygon.size());
        CHECK(seq[i].polygon.vertex(3) == par[i].polygon.vertex(3));
    }
    // Sorted by (level, first vertex).
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        CHECK(seq[i].level <= seq[i + 1].level);
}

TEST_CASE("assign_inner_values: half-step above upper lines, below lower lines") {
    ImageGrid g = pad_zero(center_peak_3x3(7));
    std::vector<double> levels{0.5, 1.5, 2.5};
    auto lines = extract_family(g, levels, 0.1);
    assign_inner_values(lines, levels, 1.0);
    for (const auto& ll : lines) {
        REQUIRE(ll.upper);
        CHECK(ll.inner_value == doctest::Approx(ll.nominal_level + 0.5));
    }
}
