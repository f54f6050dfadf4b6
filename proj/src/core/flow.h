#pragma once

#include "geometry.h"

#include <functional>
#include <vector>

namespace lls {

enum class Scheme { cs, as };

struct FlowParams {
    Scheme scheme = Scheme::cs;
    double delta = 0.1;        // resample spacing, pixels
    double dt_safety = 0.25;   // c in dt = c*delta^2 / max(1, speed*delta)
    double collapse_area = -1; // area threshold; <0 means delta^2
    long max_steps = 1000000;

    double effective_collapse_area() const {
        return collapse_area > 0 ? collapse_area : delta * delta;
    }
};

/// Outcome of evolving one curve: the surviving polygon, or the estimated
/// collapse time and point. collapse_time never exceeds the requested time.
struct EvolvedCurve {
    bool alive = true;
    Polygon polygon;            // valid iff alive
    double collapse_time = 0.0; // valid iff !alive
    Point collapse_point;       // valid iff !alive
};

/// Circle radius after time dt of curve shortening: sqrt(max(r0^2 - 2 dt, 0)).
double radial_cs(double r0, double dt);

/// Circle radius after time dt of affine shortening:
/// (max(r0^{4/3} - (4/3) dt, 0))^{3/4}.
double radial_as(double r0, double dt);

/// One explicit step of curve shortening: every vertex moves by dt times its
/// curvature vector (toward the local circumcenter), then the polygon is
/// resampled at params.delta. Throws NumericalError if the step produces a
/// self-intersection; the caller halves dt and retries.
Polygon cs_step(const Polygon& poly, double dt, const FlowParams& params);

/// Same with the affine-invariant speed sgn(k)|k|^{1/3} along the normal.
Polygon as_step(const Polygon& poly, double dt, const FlowParams& params);

/// Stability bound for the next step given the current maximum curvature.
double adaptive_dt(const Polygon& poly, const FlowParams& params);

/// Per-step progress hook (step index, elapsed time, signed area, length).
using FlowTrace = std::function<void(long, double, double, double)>;

/// Evolve a polygon to time t with adaptive explicit steps. The curve is
/// declared collapsed once its area falls below the collapse threshold; the
/// collapse time is refined by area extrapolation (area/2pi for cs, the
/// measured decay rate for as) and the point is the centroid of the last
/// surviving polygon. Steps that self-intersect are retried with halved dt
/// (up to 8 times). Deterministic for fixed params.
EvolvedCurve evolve_to(const Polygon& poly, double t, const FlowParams& params,
                       const FlowTrace& trace = {});

/// Independent evolution of each curve in the family; output order matches
/// input. Curves may be distributed over worker threads; results are
/// identical regardless of scheduling.
std::vector<EvolvedCurve> evolve_family(const std::vector<Polygon>& polys,
                                        double t, const FlowParams& params,
                                        int threads = 1);

} // namespace lls
