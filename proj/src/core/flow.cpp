#include "flow.h"

#include "errors.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

namespace lls {

double radial_cs(double r0, double dt) {
    if (dt == 0)
        return r0;
    return std::sqrt(std::max(r0 * r0 - 2 * dt, 0.0));
}

double radial_as(double r0, double dt) {
    if (dt == 0)
        return r0;
    double v = std::pow(r0, 4.0 / 3.0) - (4.0 / 3.0) * dt;
    return v > 0 ? std::pow(v, 0.75) : 0.0;
}

namespace {

/// Signed Menger curvature (positive at left turns) of the triple around i.
inline double signed_menger(const std::vector<Point>& v, size_t i, size_t n) {
    Point a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
    double du = dist(a, b), dv = dist(b, c), dw = dist(a, c);
    double denom = du * dv * dw;
    return denom > 0 ? 2 * cross(b - a, c - b) / denom : 0.0;
}

/// Flow velocity at every vertex; returns the maximum |k|.
///
/// cs moves by the raw curvature vector. as moves by sgn(k)|k|^{1/3} along
/// the tangent normal, with the curvature binomially filtered along the
/// curve first: the cube root has unbounded slope at k = 0, so unfiltered
/// grid-scale curvature noise in flat stretches would saturate into a
/// standing sawtooth and stall the motion there.
double flow_velocities(const std::vector<Point>& v, Scheme scheme,
                       std::vector<Point>& vel, std::vector<double>& kbuf) {
    const size_t n = v.size();
    vel.resize(n);
    double max_kk = 0;
    if (scheme == Scheme::cs) {
        for (size_t i = 0; i < n; ++i) {
            Point kv = curvature_vector(v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            max_kk = std::max(max_kk, dot(kv, kv));
            vel[i] = kv;
        }
        return std::sqrt(max_kk);
    }
    kbuf.resize(n);
    for (size_t i = 0; i < n; ++i)
        kbuf[i] = signed_menger(v, i, n);
    for (size_t i = 0; i < n; ++i) {
        // 1-4-6-4-1 filter: exact kill of the alternating mode.
        double k = (kbuf[(i + n - 2) % n] + 4 * kbuf[(i + n - 1) % n] +
                    6 * kbuf[i] + 4 * kbuf[(i + 1) % n] + kbuf[(i + 2) % n]) /
                   16.0;
        max_kk = std::max(max_kk, k * k);
        Point tangent = v[(i + 1) % n] - v[(i + n - 1) % n];
        double tl = norm(tangent);
        if (tl == 0 || k == 0) {
            vel[i] = {};
            continue;
        }
        Point normal{-tangent.y / tl, tangent.x / tl};
        vel[i] = normal * std::cbrt(k);
    }
    return std::sqrt(max_kk);
}

double max_curvature(const std::vector<Point>& v) {
    const size_t n = v.size();
    double max_kk = 0;
    for (size_t i = 0; i < n; ++i) {
        Point kv = curvature_vector(v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
        max_kk = std::max(max_kk, dot(kv, kv));
    }
    return std::sqrt(max_kk);
}

double dt_bound(double max_k, const FlowParams& p) {
    double speed_scale =
        p.scheme == Scheme::cs ? max_k : std::cbrt(std::max(max_k, 0.0));
    return p.dt_safety * p.delta * p.delta / std::max(1.0, speed_scale * p.delta);
}

/// Move and resample, without the self-intersection scan (the caller decides
/// when to pay for it).
Polygon apply_velocities(const std::vector<Point>& v,
                         const std::vector<Point>& vel, double dt, double delta,
                         bool& redistributed) {
    std::vector<Point> moved(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        moved[i] = v[i] + vel[i] * dt;
    const size_t n_before = moved.size();
    const Point probe = moved[0];
    Polygon res = resample(Polygon(std::move(moved)), delta);
    redistributed = res.size() != n_before || !(res.vertex(0) == probe);
    return res;
}

Polygon step_once(const Polygon& poly, Scheme scheme, double dt, double delta) {
    std::vector<Point> vel;
    std::vector<double> kbuf;
    flow_velocities(poly.vertices(), scheme, vel, kbuf);
    bool redistributed = false;
    Polygon res = apply_velocities(poly.vertices(), vel, dt, delta, redistributed);
    if (find_self_intersection(res))
        throw NumericalError("flow step produced a self-intersection");
    return res;
}

} // namespace

double adaptive_dt(const Polygon& poly, const FlowParams& params) {
    return dt_bound(max_curvature(poly.vertices()), params);
}

Polygon cs_step(const Polygon& poly, double dt, const FlowParams& params) {
    return step_once(poly, Scheme::cs, dt, params.delta);
}

Polygon as_step(const Polygon& poly, double dt, const FlowParams& params) {
    return step_once(poly, Scheme::as, dt, params.delta);
}

EvolvedCurve evolve_to(const Polygon& poly, double t, const FlowParams& params,
                       const FlowTrace& trace) {
    if (t < 0)
        throw ParamError("evolution time must be nonnegative");
    EvolvedCurve result;
    if (t == 0) {
        result.polygon = poly;
        return result;
    }

    const double area_min = params.effective_collapse_area();
    Polygon cur = poly;
    double elapsed = 0;
    double prev_area = std::abs(cur.signed_area());
    double prev_dt = 0;
    long step = 0;
    std::vector<Point> vel;
    std::vector<double> kbuf;

    auto collapse = [&](double area) {
        result.alive = false;
        double remaining;
        if (params.scheme == Scheme::cs) {
            // Curve shortening loses area at the constant rate 2*pi.
            remaining = area / (2 * std::numbers::pi);
        } else {
            double rate = prev_dt > 0 ? (prev_area - area) / prev_dt : 0;
            remaining = rate > 0 ? area / rate : 0;
        }
        result.collapse_time = std::min(elapsed + remaining, t);
        result.collapse_point = cur.centroid();
        return result;
    };

    // Separation budget: after a scan certifying all far segment pairs at
    // least `cell` apart, a crossing cannot form until the accumulated
    // motion spends that margin, so the scan may be skipped meanwhile.
    double scan_budget = 0;
    while (elapsed < t) {
        double area = std::abs(cur.signed_area());
        if (area < area_min || cur.size() < 3)
            return collapse(area);
        if (trace)
            trace(step, elapsed, cur.signed_area(), cur.length());
        if (step >= params.max_steps)
            throw TimeoutError("flow exceeded max_steps before reaching the "
                               "requested time");

        double max_k = flow_velocities(cur.vertices(), params.scheme, vel, kbuf);
        double dt = std::min(dt_bound(max_k, params), t - elapsed);
        double max_speed = params.scheme == Scheme::cs
                               ? max_k
                               : std::cbrt(std::max(max_k, 0.0));
        // Tight curves could fold between near-in-index segments, which the
        // budget does not cover; scan those every step.
        bool always_scan = max_k * params.delta > 0.5;
        Polygon next;
        int halvings = 0;
        for (;;) {
            bool redistributed = false;
            next = apply_velocities(cur.vertices(), vel, dt, params.delta,
                                    redistributed);
            scan_budget -= 2 * max_speed * dt;
            if (redistributed || always_scan || scan_budget <= 0) {
                SelfScanResult scan = self_intersection_scan(next);
                if (scan.crossing) {
                    if (++halvings > 8)
                        throw NumericalError(
                            "flow step produced a self-intersection");
                    dt /= 2;
                    continue;
                }
                scan_budget = scan.far_pairs_close ? 0 : scan.cell;
            }
            break;
        }
        prev_area = area;
        prev_dt = dt;
        cur = std::move(next);
        elapsed += dt;
        ++step;
    }
    double area = std::abs(cur.signed_area());
    if (area < area_min)
        return collapse(area);
    result.polygon = std::move(cur);
    return result;
}

std::vector<EvolvedCurve> evolve_family(const std::vector<Polygon>& polys,
                                        double t, const FlowParams& params,
                                        int threads) {
    std::vector<EvolvedCurve> out(polys.size());
    const int nthreads = std::max(1, std::min<int>(threads, int(polys.size())));

    std::atomic<size_t> next{0};
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= polys.size())
                break;
            out[i] = evolve_to(polys[i], t, params);
        }
    };

    if (nthreads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int k = 0; k < nthreads; ++k)
            pool.emplace_back([&] {
                try {
                    work();
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(polys.size());
                }
            });
        for (auto& th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
    }
    return out;
}

} // namespace lls
