#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.h"
#include "core/flow.h"
#include "fixtures.h"

#include <cmath>
#include <numbers>

using namespace lls;
namespace fx = lls::fixtures;

namespace {

double mean_radius(const Polygon& p, Point c = {0, 0}) {
    double sum = 0;
    for (const Point& v : p.vertices())
        sum += dist(v, c);
    return sum / double(p.size());
}

FlowParams cs_params(double delta = 0.1) {
    FlowParams fp;
    fp.scheme = Scheme::cs;
    fp.delta = delta;
    return fp;
}

FlowParams as_params(double delta = 0.1) {
    FlowParams fp;
    fp.scheme = Scheme::as;
    fp.delta = delta;
    return fp;
}

} // namespace

TEST_CASE("radial_cs closed form") {
    CHECK(radial_cs(10, 18) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(radial_cs(7.3, 0) == 7.3);
    CHECK(radial_cs(4, 8) == 0.0);
    CHECK(radial_cs(4, 9) == 0.0); // clamped past collapse
}

TEST_CASE("radial_as closed form") {
    CHECK(radial_as(8, 3) == doctest::Approx(std::pow(12.0, 0.75)).epsilon(1e-15));
    CHECK(radial_as(8, 3) == doctest::Approx(6.44742).epsilon(1e-5));
    CHECK(radial_as(2.5, 0) == 2.5);
    CHECK(radial_as(1, 0.75) == 0.0);
}

TEST_CASE("cs_step: circle radius 10 shrinks by the radial law") {
    Polygon c = fx::circle(10.0, {0, 0}, 640);
    Polygon stepped = cs_step(c, 0.1, cs_params());
    CHECK(mean_radius(stepped) ==
          doctest::Approx(radial_cs(10, 0.1)).epsilon(1e-4));
    CHECK(std::abs(mean_radius(stepped) - 9.98999) < 1e-3);
}

TEST_CASE("cs_step: straight edges stand still") {
    std::vector<Point> v;
    for (int i = 0; i < 40; ++i)
        v.push_back({double(i), 0.0});
    v.push_back({40.0, 0.0});
    v.push_back({40.0, 1.0});
    for (int i = 40; i > 0; --i)
        v.push_back({double(i), 2.0});
    v.push_back({0.0, 2.0});
    v.push_back({0.0, 1.0});
    Polygon rect(v);
    Polygon stepped = cs_step(rect, 1e-3, cs_params(1.25));
    // Compare the flat-run vertices (away from the corners).
    REQUIRE(stepped.size() == rect.size());
    for (int i = 5; i <= 35; ++i)
        CHECK(dist(stepped.vertex(size_t(i)), rect.vertex(size_t(i))) < 1e-9);
}

TEST_CASE("cs_step: convex polygons stay convex") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        Polygon p = resample(fx::random_convex(rng, 8.0), 0.2);
        Polygon stepped = cs_step(p, 0.005, cs_params(0.2));
        CHECK(is_convex(stepped, 1e-9));
    }
}

TEST_CASE("as_step: circle radius 8 follows the affine radial law") {
    Polygon c = fx::circle(8.0, {0, 0}, 512);
    Polygon stepped = as_step(c, 0.1, as_params());
    // (8^{4/3} - (4/3) 0.1)^{3/4} = 7.94998...
    CHECK(mean_radius(stepped) ==
          doctest::Approx(radial_as(8, 0.1)).epsilon(1e-4));
    CHECK(std::abs(mean_radius(stepped) - 7.950) < 1e-3);
}

TEST_CASE("as_step: zero-curvature vertices are stationary") {
    std::vector<Point> v;
    for (int i = 0; i < 30; ++i)
        v.push_back({double(i), 0.0});
    for (int i = 0; i < 3; ++i)
        v.push_back({30.0, double(i)});
    for (int i = 30; i > 0; --i)
        v.push_back({double(i), 3.0});
    for (int i = 3; i > 0; --i)
        v.push_back({0.0, double(i)});
    Polygon rect(v);
    Polygon stepped = as_step(rect, 1e-3, as_params(1.25));
    REQUIRE(stepped.size() == rect.size());
    // The curvature filter reaches two vertices; beyond that the flat run
    // has exactly zero speed.
    for (int i = 5; i <= 25; ++i)
        CHECK(dist(stepped.vertex(size_t(i)), rect.vertex(size_t(i))) < 1e-12);
}

TEST_CASE("as_step: 2:1 ellipse keeps shrinking inside itself") {
    Polygon e = fx::ellipse(8, 4, {0, 0}, 512);
    FlowParams fp = as_params(0.15);
    Polygon cur = resample(e, fp.delta);
    for (int k = 0; k < 200; ++k)
        cur = as_step(cur, adaptive_dt(cur, fp), fp);
    CHECK(surrounds(cur, e));
    CHECK(is_convex(cur, 1e-9));
}

TEST_CASE("evolve_to: circle r=20 to t=150 lands on radius 10 within 1%") {
    EvolvedCurve out = evolve_to(fx::circle(20, {0, 0}, 1024), 150, cs_params());
    REQUIRE(out.alive);
    CHECK(mean_radius(out.polygon) == doctest::Approx(10.0).epsilon(0.01));
}

TEST_CASE("evolve_to: circle r=4 collapses near t=8") {
    EvolvedCurve out = evolve_to(fx::circle(4, {3, -2}, 256), 10, cs_params());
    REQUIRE(!out.alive);
    CHECK(out.collapse_time == doctest::Approx(8.0).epsilon(0.05));
    CHECK(dist(out.collapse_point, {3, -2}) < 0.1);
}

TEST_CASE("evolve_to: t=0 returns the input unchanged") {
    Polygon c = fx::circle(5, {1, 1}, 64);
    EvolvedCurve out = evolve_to(c, 0, cs_params());
    REQUIRE(out.alive);
    CHECK(out.polygon.vertices() == c.vertices());
}

TEST_CASE("evolve_to: max_steps exhaustion raises a timeout error") {
    FlowParams fp = cs_params();
    fp.max_steps = 3;
    CHECK_THROWS_AS(evolve_to(fx::circle(20, {0, 0}, 256), 100, fp), TimeoutError);
}

TEST_CASE("evolve_family: nested circles keep nesting, radii follow the law") {
    std::vector<Polygon> fam{fx::circle(5, {0, 0}, 320),
                             fx::circle(10, {0, 0}, 640)};
    auto out = evolve_family(fam, 10, cs_params());
    REQUIRE(out.size() == 2);
    REQUIRE(out[0].alive);
    REQUIRE(out[1].alive);
    CHECK(mean_radius(out[0].polygon) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(0.01));
    CHECK(mean_radius(out[1].polygon) ==
          doctest::Approx(std::sqrt(80.0)).epsilon(0.01));
    CHECK(surrounds(out[0].polygon, out[1].polygon));
}

TEST_CASE("evolve_family: empty input, and per-curve collapse records") {
    CHECK(evolve_family({}, 5, cs_params()).empty());

    std::vector<Polygon> fam{fx::circle(2, {0, 0}, 128),
                             fx::circle(10, {0, 0}, 640)};
    auto out = evolve_family(fam, 5, cs_params());
    REQUIRE(!out[0].alive);
    CHECK(out[0].collapse_time == doctest::Approx(2.0).epsilon(0.05));
    REQUIRE(out[1].alive);
    CHECK(mean_radius(out[1].polygon) ==
          doctest::Approx(std::sqrt(90.0)).epsilon(0.01));
}

TEST_CASE("evolve_family: threaded results are bitwise identical") {
    std::mt19937 rng(12);
    std::vector<Polygon> fam;
    for (int i = 0; i < 8; ++i)
        fam.push_back(fx::random_star(rng, 6.0, {double(20 * i), 0}, 0.3));
    auto seq = evolve_family(fam, 2.0, cs_params(0.2), 1);
    auto par = evolve_family(fam, 2.0, cs_params(0.2), 4);
    REQUIRE(seq.size() == par.size());
    for (size_t i = 0; i < seq.size(); ++i) {
        REQUIRE(seq[i].alive == par[i].alive);
        if (seq[i].alive)
            CHECK(seq[i].polygon.vertices() == par[i].polygon.vertices());
    }
}

TEST_CASE("crown truncation: survivors are exactly the curves with T > t") {
    // Concentric circles radii 1..6; collapse times r^2/2. Evolve to a time
    // strictly between T(3) = 4.5 and T(4) = 8.
    std::vector<Polygon> fam;
    for (int r = 1; r <= 6; ++r)
        fam.push_back(fx::circle(double(r), {0, 0}, 64 * r));
    const double t = 6.25;
    auto out = evolve_family(fam, t, cs_params());
    std::vector<const Polygon*> alive;
    for (int r = 1; r <= 6; ++r) {
        bool should_survive = r * r / 2.0 > t;
        CHECK(out[size_t(r - 1)].alive == should_survive);
        if (out[size_t(r - 1)].alive)
            alive.push_back(&out[size_t(r - 1)].polygon);
    }
    // Survivors remain totally ordered under the partial order.
    for (size_t i = 0; i + 1 < alive.size(); ++i)
        CHECK(surrounds(*alive[i], *alive[i + 1]));
}

TEST_CASE("inclusion principle and min-distance growth on sampled pairs") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        bool convex = trial % 2 == 0;
        auto [outer, inner] = fx::nested_pair(rng, convex);
        FlowParams fp = cs_params(0.2);
        Polygon po = resample(outer, fp.delta), pi = resample(inner, fp.delta);
        double d_prev = min_distance(po, pi);
        for (int k = 0; k < 6; ++k) {
            auto eo = evolve_to(po, 0.15, fp);
            auto ei = evolve_to(pi, 0.15, fp);
            if (!ei.alive || !eo.alive)
                break;
            po = eo.polygon;
            pi = ei.polygon;
            CHECK(surrounds(pi, po));
            double d = min_distance(po, pi);
            CHECK(d >= d_prev - 1e-3 * fp.delta);
            d_prev = d;
        }
    }
}

TEST_CASE("affine flow commutes with unimodular shears (curve level)") {
    Polygon start = fx::ellipse(7, 4, {0, 0}, 512, 0.4);
    FlowParams fp = as_params(0.1);
    const double t = 2.0;
    const double m00 = 1, m01 = 0.6, m10 = 0, m11 = 1; // det = 1

    auto e1 = evolve_to(start, t, fp);
    REQUIRE(e1.alive);
    Polygon evolved_then_sheared = linear_transform(e1.polygon, m00, m01, m10, m11);

    Polygon sheared = linear_transform(start, m00, m01, m10, m11);
    auto e2 = evolve_to(resample(sheared, fp.delta), t, fp);
    REQUIRE(e2.alive);

    CHECK(hausdorff_distance(evolved_then_sheared, e2.polygon, 0.05) <=
          2 * fp.delta);
}

TEST_CASE("bean polygon rounds out: isoperimetric ratio decreases") {
    FlowParams fp = cs_params();
    Polygon cur = resample(fx::bean(8.0), fp.delta);
    auto ratio = [](const Polygon& p) {
        return p.length() * p.length() /
               (4 * std::numbers::pi * std::abs(p.signed_area()));
    };
    double r0 = ratio(cur);
    CHECK(r0 > 1.05);              // genuinely non-circular
    CHECK(!is_convex(cur, 1e-9));  // genuinely non-convex
    // Evolve toward collapse; the ratio must pass below 1.01 while the area
    // is still above 4 * A_min.
    double best = r0;
    while (std::abs(cur.signed_area()) >= 4 * fp.effective_collapse_area()) {
        auto out = evolve_to(cur, 2.0, fp);
        if (!out.alive)
            break;
        cur = out.polygon;
        best = std::min(best, ratio(cur));
        if (best <= 1.01)
            break;
    }
    CHECK(best < r0);
    CHECK(best <= 1.01);
}
