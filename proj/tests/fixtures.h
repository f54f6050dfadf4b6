#pragma once

#include "core/fd.h"
#include "core/geometry.h"
#include "core/image.h"

#include <cstdint>
#include <random>

namespace lls::fixtures {

/// Exact cone max(0, peak - |x - center|) with real-valued samples.
ImageGrid cone(int size = 128, double peak = 40,
               Point center = {64, 64});

/// Integer-valued cone (rounded), for exact round-trip checks.
ImageGrid cone_int(int size = 128, double peak = 40, Point center = {64, 64});

RadialProfile cone_profile(double peak = 40);

/// 0/high checkerboard.
ImageGrid checkerboard(int size = 16, double high = 16);

/// Two smooth Gaussian bumps with a saddle between them, rounded to integers.
ImageGrid two_bump(int size = 128, double amplitude = 60);

/// Two separated integer cones (disjoint supports).
ImageGrid two_cones(int size = 96);

/// Seeded sum of random Gaussian bumps, rounded to integers, zero margin.
ImageGrid random_smooth(int size = 96, uint32_t seed = 0);

/// Piecewise-constant shapes (nested disk/rectangle plus a separate blob).
ImageGrid cartoon(int size = 64);

// --- polygons ---------------------------------------------------------------

Polygon circle(double radius, Point center = {0, 0}, int n = 256);
Polygon ellipse(double a, double b, Point center = {0, 0}, int n = 256,
                double angle = 0);
Polygon square(double side, Point center = {0, 0});

/// Non-convex bean: smooth radial wiggle with a dent.
Polygon bean(double scale = 10, Point center = {0, 0}, int n = 512);

/// Random star-shaped polygon around `center`: radius base_r times a
/// low-harmonic perturbation bounded away from zero.
Polygon random_star(std::mt19937& rng, double base_r, Point center = {0, 0},
                    double wiggle = 0.35, int n = 192);

/// Random convex polygon (small-harmonic radial perturbation of a circle,
/// rejected and regenerated until convex).
Polygon random_convex(std::mt19937& rng, double base_r, Point center = {0, 0},
                      int n = 128);

/// Nested disjoint pair (outer, inner), convex or star-shaped.
std::pair<Polygon, Polygon> nested_pair(std::mt19937& rng, bool convex);

} // namespace lls::fixtures
