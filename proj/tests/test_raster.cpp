#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.h"
#include "core/raster.h"
#include "fixtures.h"

#include <cmath>

using namespace lls;
namespace fx = lls::fixtures;

namespace {

LevelLine make_line(Polygon poly, double level, double inner, int id) {
    LevelLine ll;
    ll.polygon = std::move(poly);
    ll.level = level;
    ll.nominal_level = level;
    ll.inner_value = inner;
    ll.upper = true;
    ll.id = id;
    return ll;
}

EvolvedTree tree_of(std::vector<LevelLine> lines) {
    return as_evolved(InclusionTree(std::move(lines)));
}

/// Reference chain: pad, extract at integer+1/2 levels, paint values.
ImageGrid roundtrip(const ImageGrid& img) {
    ImageGrid padded = pad_zero(img);
    auto levels = quantized_levels(padded, 1.0, 0.5);
    std::vector<double> nominal = levels;
    for (double& v : nominal)
        v = 0.5 + std::round(v - 0.5);
    auto lines = extract_family(padded, levels, 0.1, 1, &nominal);
    assign_inner_values(lines, nominal, 1.0);
    InclusionTree tree(std::move(lines));
    return rasterize(as_evolved(tree), img.width(), img.height(), 0.0);
}

} // namespace

TEST_CASE("rasterize: empty tree paints the background") {
    ImageGrid out = rasterize(tree_of({}), 8, 8, 3.5);
    for (double v : out.samples())
        CHECK(v == 3.5);
}

TEST_CASE("rasterize: single circle fills a clean disk") {
    // Pixels more than half a pixel away from the boundary must be exact
    // against the point-in-circle oracle.
    Polygon c = fx::circle(8.0, {16, 16}, 1024);
    ImageGrid out = rasterize(tree_of({make_line(c, 50, 100, 0)}), 32, 32, 0);
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            double r = dist({double(i), double(j)}, {16, 16});
            if (r < 7.5)
                CHECK(out.at(i, j) == 100.0);
            else if (r > 8.5)
                CHECK(out.at(i, j) == 0.0);
        }
}

TEST_CASE("rasterize: nested circles paint annulus then core") {
    std::vector<LevelLine> lines;
    lines.push_back(make_line(fx::circle(10.0, {16, 16}, 1024), 1, 50, 0));
    lines.push_back(make_line(fx::circle(4.0, {16, 16}, 512), 2, 100, 1));
    ImageGrid out = rasterize(tree_of(std::move(lines)), 32, 32, 0);
    for (int j = 0; j < 32; ++j)
        for (int i = 0; i < 32; ++i) {
            double r = dist({double(i), double(j)}, {16, 16});
            if (r < 3.5)
                CHECK(out.at(i, j) == 100.0);
            else if (r > 4.5 && r < 9.5)
                CHECK(out.at(i, j) == 50.0);
            else if (r > 10.5)
                CHECK(out.at(i, j) == 0.0);
        }
}

TEST_CASE("rasterize: pixel center exactly on the edge takes the inner value") {
    // Unit square with corners on pixel centers: all four boundary centers in.
    Polygon sq({{2, 2}, {5, 2}, {5, 5}, {2, 5}});
    ImageGrid out = rasterize(tree_of({make_line(sq, 1, 9, 0)}), 8, 8, 0);
    for (int j = 2; j <= 5; ++j)
        for (int i = 2; i <= 5; ++i)
            CHECK(out.at(i, j) == 9.0);
    CHECK(out.at(1, 3) == 0.0);
    CHECK(out.at(6, 3) == 0.0);
}

TEST_CASE("round-trip identity at t=0 for integer images") {
    for (const ImageGrid& img :
         {fx::cone_int(48, 16, {24, 24}), fx::checkerboard(10, 8),
          fx::cartoon(48), fx::random_smooth(40, 5)}) {
        ImageGrid out = roundtrip(img);
        REQUIRE(out.width() == img.width());
        for (int j = 0; j < img.height(); ++j)
            for (int i = 0; i < img.width(); ++i)
                CHECK(out.at(i, j) == img.at(i, j));
    }
}

TEST_CASE("splice: collapsed nodes vanish, children re-parent upward") {
    std::vector<LevelLine> lines;
    lines.push_back(make_line(fx::circle(10.0, {0, 0}, 256), 1, 1, 0));
    lines.push_back(make_line(fx::circle(6.0, {0, 0}, 256), 2, 2, 1));
    lines.push_back(make_line(fx::circle(2.0, {0, 0}, 128), 3, 3, 2));
    InclusionTree tree(std::move(lines));

    std::vector<EvolvedCurve> evo(3);
    evo[0].alive = true;
    evo[0].polygon = fx::circle(9.0, {0, 0}, 256);
    evo[1].alive = false; // middle ring dies
    evo[1].collapse_time = 1.5;
    evo[1].collapse_point = {0, 0};
    evo[2].alive = true;
    evo[2].polygon = fx::circle(1.0, {0, 0}, 128);

    EvolvedTree out = splice_evolved(tree, evo);
    REQUIRE(out.lines.size() == 2);
    CHECK(out.collapsed == 1);
    CHECK(out.lines[0].id == 0);
    CHECK(out.lines[1].id == 2);
    CHECK(out.parent[1] == 0); // re-parented to the surviving ancestor
}

TEST_CASE("splice: a child escaping its parent is a geometry error") {
    std::vector<LevelLine> lines;
    lines.push_back(make_line(fx::circle(10.0, {0, 0}, 256), 1, 1, 0));
    lines.push_back(make_line(fx::circle(2.0, {0, 0}, 128), 2, 2, 1));
    InclusionTree tree(std::move(lines));
    std::vector<EvolvedCurve> evo(2);
    evo[0].alive = true;
    evo[0].polygon = fx::circle(3.0, {0, 0}, 256);
    evo[1].alive = true;
    evo[1].polygon = fx::circle(2.0, {30, 0}, 128); // escaped
    CHECK_THROWS_AS(splice_evolved(tree, evo), GeometryError);
}

TEST_CASE("lipschitz_estimate: concentric circles") {
    std::vector<LevelLine> lines;
    lines.push_back(make_line(fx::circle(5.0, {0, 0}, 2048), 10, 10, 0));
    lines.push_back(make_line(fx::circle(4.0, {0, 0}, 2048), 20, 20, 1));
    EvolvedTree t = tree_of(std::move(lines));
    CHECK(lipschitz_estimate(t) == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("lipschitz_estimate: single line or empty tree is 0") {
    CHECK(lipschitz_estimate(tree_of({})) == 0.0);
    CHECK(lipschitz_estimate(
              tree_of({make_line(fx::circle(5.0), 1, 1, 0)})) == 0.0);
}

TEST_CASE("lipschitz_estimate: cone tree estimates the cone slope") {
    ImageGrid img = fx::cone(64, 20, {32, 32});
    ImageGrid padded = pad_zero(img);
    auto levels = quantized_levels(padded, 1.0, 0.5);
    auto lines = extract_family(padded, levels, 0.1);
    assign_inner_values(lines, levels, 1.0);
    InclusionTree tree(std::move(lines));
    // Slope of the cone is 1 gray level per pixel.
    CHECK(lipschitz_estimate(as_evolved(tree)) ==
          doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("monotone paint: values decrease outward along rays of the cone") {
    ImageGrid img = fx::cone_int(48, 16, {24, 24});
    ImageGrid out = roundtrip(img);
    for (double angle : {0.1, 1.1, 2.9, 4.2}) {
        double prev = 1e300;
        for (double r = 0.3; r < 22; r += 1.0) {
            int i = int(std::lround(24 + r * std::cos(angle)));
            int j = int(std::lround(24 + r * std::sin(angle)));
            CHECK(out.at(i, j) <= prev + 1e-12);
            prev = out.at(i, j);
        }
    }
}

TEST_CASE("flat regions away from collapse keep their value over small steps") {
    // Wedding-cake image: plateaus at 0, 10, 20.
    const int n = 64;
    ImageGrid img(n, n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double r = dist({double(i), double(j)}, {32, 32});
            img.at(i, j) = r < 10 ? 20 : (r < 22 ? 10 : 0);
        }
    ImageGrid padded = pad_zero(img);
    auto levels = quantized_levels(padded, 1.0, 0.5);
    std::vector<double> nominal = levels;
    for (double& v : nominal)
        v = 0.5 + std::round(v - 0.5);
    auto lines = extract_family(padded, levels, 0.1, 1, &nominal);
    assign_inner_values(lines, nominal, 1.0);
    InclusionTree tree(std::move(lines));

    std::vector<Polygon> polys;
    for (const auto& ll : tree.lines())
        polys.push_back(ll.polygon);
    FlowParams fp;
    fp.delta = 0.1;
    auto evolved = evolve_family(polys, 0.5, fp);
    ImageGrid out = rasterize(splice_evolved(tree, evolved), n, n, 0.0);

    // Mid-plateau pixels, far from any level line.
    CHECK(out.at(32, 32) == 20.0);
    CHECK(out.at(32 + 16, 32) == 10.0);
    CHECK(out.at(4, 4) == 0.0);
}
