#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lls::fixtures {

ImageGrid cone(int size, double peak, Point center) {
    ImageGrid g(size, size);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i)
            g.at(i, j) =
                std::max(0.0, peak - dist({double(i), double(j)}, center));
    return g;
}

ImageGrid cone_int(int size, double peak, Point center) {
    ImageGrid g = cone(size, peak, center);
    for (double& v : g.samples())
        v = std::round(v);
    return g;
}

RadialProfile cone_profile(double peak) {
    return RadialProfile({{0.0, peak}, {peak, 0.0}, {peak + 1000.0, 0.0}});
}

ImageGrid checkerboard(int size, double high) {
    ImageGrid g(size, size);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i)
            g.at(i, j) = ((i + j) % 2) ? high : 0.0;
    return g;
}

ImageGrid two_bump(int size, double amplitude) {
    ImageGrid g(size, size);
    const Point c1{size * 0.34, size * 0.5}, c2{size * 0.66, size * 0.5};
    const double s2 = 2.0 * (size / 10.6) * (size / 10.6);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            Point p{double(i), double(j)};
            double d1 = dist(p, c1), d2 = dist(p, c2);
            double v = amplitude * (std::exp(-d1 * d1 / s2) +
                                    std::exp(-d2 * d2 / s2));
            g.at(i, j) = std::round(v);
        }
    return g;
}

ImageGrid two_cones(int size) {
    ImageGrid g(size, size);
    const Point c1{size * 0.28, size * 0.5}, c2{size * 0.72, size * 0.5};
    const double peak = size / 6.0;
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            Point p{double(i), double(j)};
            double v = std::max(0.0, peak - dist(p, c1)) +
                       std::max(0.0, peak - dist(p, c2));
            g.at(i, j) = std::round(v);
        }
    return g;
}

ImageGrid random_smooth(int size, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> pos(size * 0.25, size * 0.75);
    std::uniform_real_distribution<double> amp(10.0, 25.0);
    std::uniform_real_distribution<double> sigma(size * 0.06, size * 0.14);

    struct Bump {
        Point c;
        double a, s2;
    };
    std::vector<Bump> bumps;
    for (int k = 0; k < 6; ++k)
        bumps.push_back({{pos(rng), pos(rng)}, amp(rng),
                         2 * sigma(rng) * sigma(rng)});

    ImageGrid g(size, size);
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            double v = 0;
            for (const Bump& b : bumps) {
                double d = dist({double(i), double(j)}, b.c);
                v += b.a * std::exp(-d * d / b.s2);
            }
            g.at(i, j) = std::round(v);
        }
    return g;
}

ImageGrid cartoon(int size) {
    ImageGrid g(size, size);
    const Point big{size * 0.42, size * 0.5};
    const Point small{size * 0.40, size * 0.40};
    const Point blob{size * 0.78, size * 0.72};
    for (int j = 0; j < size; ++j)
        for (int i = 0; i < size; ++i) {
            Point p{double(i), double(j)};
            double v = 0;
            if (dist(p, big) < size * 0.30)
                v = 4;
            if (p.x > size * 0.28 && p.x < size * 0.55 && p.y > size * 0.52 &&
                p.y < size * 0.68)
                v = 8;
            if (dist(p, small) < size * 0.10)
                v = 12;
            if (dist(p, blob) < size * 0.12)
                v = 6;
            g.at(i, j) = v;
        }
    return g;
}

Polygon circle(double radius, Point center, int n) {
    std::vector<Point> v;
    v.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        double a = 2 * std::numbers::pi * i / n;
        v.push_back({center.x + radius * std::cos(a),
                     center.y + radius * std::sin(a)});
    }
    return Polygon(std::move(v));
}

Polygon ellipse(double a, double b, Point center, int n, double angle) {
    std::vector<Point> v;
    v.reserve(size_t(n));
    const double ca = std::cos(angle), sa = std::sin(angle);
    for (int i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * i / n;
        double x = a * std::cos(t), y = b * std::sin(t);
        v.push_back({center.x + ca * x - sa * y, center.y + sa * x + ca * y});
    }
    return Polygon(std::move(v));
}

Polygon square(double side, Point center) {
    double h = side / 2;
    return Polygon({{center.x - h, center.y - h},
                    {center.x + h, center.y - h},
                    {center.x + h, center.y + h},
                    {center.x - h, center.y + h}});
}

Polygon bean(double scale, Point center, int n) {
    std::vector<Point> v;
    v.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * i / n;
        // Dented oval; the cos(2t) term carves two flanks, one deep enough
        // to make the shape non-convex.
        double r = scale * (1.0 + 0.45 * std::cos(t) + 0.35 * std::cos(2 * t));
        v.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

Polygon random_star(std::mt19937& rng, double base_r, Point center,
                    double wiggle, int n) {
    std::uniform_real_distribution<double> amp(-wiggle, wiggle);
    std::uniform_real_distribution<double> phase(0, 2 * std::numbers::pi);
    const int harmonics = 4;
    std::vector<double> a(harmonics), ph(harmonics);
    for (int k = 0; k < harmonics; ++k) {
        a[k] = amp(rng) / (k + 1);
        ph[k] = phase(rng);
    }
    std::vector<Point> v;
    v.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
        double t = 2 * std::numbers::pi * i / n;
        double r = 1.0;
        for (int k = 0; k < harmonics; ++k)
            r += a[k] * std::cos((k + 1) * t + ph[k]);
        r = std::max(r, 0.25) * base_r;
        v.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
    return Polygon(std::move(v));
}

Polygon random_convex(std::mt19937& rng, double base_r, Point center, int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Polygon p = random_star(rng, base_r, center, 0.08, n);
        if (is_convex(p, 1e-12))
            return p;
    }
    return circle(base_r, center, n);
}

std::pair<Polygon, Polygon> nested_pair(std::mt19937& rng, bool convex) {
    std::uniform_real_distribution<double> outer_r(7.0, 11.0);
    std::uniform_real_distribution<double> ratio(0.30, 0.5);
    std::uniform_real_distribution<double> off(-0.8, 0.8);
    for (;;) {
        double ro = outer_r(rng);
        Polygon outer = convex ? random_convex(rng, ro)
                               : random_star(rng, ro, {0, 0}, 0.3);
        double ri = ro * ratio(rng);
        Point c{off(rng), off(rng)};
        Polygon inner = convex ? random_convex(rng, ri, c)
                               : random_star(rng, ri, c, 0.3);
        if (!polygons_intersect(outer, inner) && surrounds(inner, outer) &&
            min_distance(outer, inner) > 0.5)
            return {std::move(outer), std::move(inner)};
    }
}

} // namespace lls::fixtures
