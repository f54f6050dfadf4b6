#include "extract.h"

#include "errors.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace lls {

namespace {

// Entry directions into a dual pixel (S, E, N, W as 0..3): the index also
// enumerates the cell corners counterclockwise on screen, starting at the
// top-left sample.
constexpr int kS = 0;

constexpr int kDx[4] = {0, 1, 0, -1}; // S, E, N, W
constexpr int kDy[4] = {1, 0, -1, 0};
constexpr int kCornerX[4] = {0, 0, 1, 1}; // corner k of a cell, see above
constexpr int kCornerY[4] = {0, 1, 1, 0};

/// Fraction along an edge from value v0 to v1 where the level l is crossed.
inline double edge_fraction(double v0, double l, double v1) {
    return (l - v0) / (v1 - v0);
}

struct Walker {
    const ImageGrid& g;
    double level;
    double delta;
    int w, h;
    std::vector<int>& stamp; // per-edge visit marks, tagged by level index
    int tag;

    int cx = 0, cy = 0; // current cell (top-left sample index)
    int dir = kS;       // direction the line entered the cell with
    double c[4] = {};   // corner values, see kCorner{X,Y}

    // Hyperbola of the current cell: (x-sx)(y-sy) = hdelta when denom != 0.
    double num = 0, denom = 0, sx = 0, sy = 0, hdelta = 0;

    Walker(const ImageGrid& g_, double level_, double delta_,
           std::vector<int>& stamp_, int tag_)
        : g(g_), level(level_), delta(delta_), w(g_.width()), h(g_.height()),
          stamp(stamp_), tag(tag_) {}

    void load_cell() {
        c[0] = g.at(cx, cy);
        c[1] = g.at(cx, cy + 1);
        c[2] = g.at(cx + 1, cy + 1);
        c[3] = g.at(cx + 1, cy);
        num = c[0] * c[2] - c[1] * c[3];
        denom = c[0] + c[2] - c[1] - c[3];
        if (denom != 0) {
            sx = cx + (c[0] - c[1]) / denom;
            sy = cy + (c[0] - c[3]) / denom;
            hdelta = (denom * level - num) / (denom * denom);
        }
    }

    Point entry_point() const {
        int rx = cx + kCornerX[dir], ry = cy + kCornerY[dir];
        double t = edge_fraction(c[dir], level, c[(dir + 3) % 4]);
        int along = (dir + 1) % 4;
        return {rx + t * kDx[along], ry + t * kDy[along]};
    }

    /// Advance to the adjacent cell the line exits into and return the exit
    /// point (= entry point of the new cell). Four-crossing cells are
    /// resolved by the saddle level.
    Point move() {
        bool left = level > c[(dir + 2) % 4];
        bool right = level < c[(dir + 1) % 4];
        if (left && right) {
            right = level < num / denom;
            left = !right;
        }
        if (left)
            dir = (dir + 1) % 4;
        else if (right)
            dir = (dir + 3) % 4;
        cx += kDx[dir];
        cy += kDy[dir];
        if (cx < 0 || cx + 1 >= w || cy < 0 || cy + 1 >= h)
            throw GeometryError(
                "level line reaches the domain boundary; pad the image first");
        load_cell();
        return entry_point();
    }

    /// Visit mark on southward horizontal-edge crossings; false once the
    /// start edge comes around again.
    bool mark() {
        if (dir != kS)
            return true;
        size_t key = size_t(cy) * w + cx;
        if (stamp[key] == tag)
            return false;
        stamp[key] = tag;
        return true;
    }

    /// Append the arc interior points between entry p and exit q of the cell
    /// whose hyperbola data is given (captured before move()).
    void sample_arc(Point p, Point q, bool hyper, double hsx, double hsy,
                    double hd, int cellx, int celly, std::vector<Point>& out) const {
        const double spacing = delta * 0.7; // dominant-axis step; keeps the
                                            // true spacing under delta
        if (!hyper) {
            // Planar patch: the level set is a straight chord.
            int n = std::max(
                2, int(std::ceil(std::max(std::abs(q.x - p.x), std::abs(q.y - p.y)) /
                                 spacing)));
            for (int i = 1; i < n; ++i)
                out.push_back(p + (q - p) * (double(i) / n));
            return;
        }
        double root = std::sqrt(std::abs(hd));
        Point v{hsx + (p.x > hsx ? root : -root), hsy + (p.y > hsy ? root : -root)};
        bool v_inside = v.x > cellx && v.x < cellx + 1 && v.y > celly && v.y < celly + 1;
        auto branch = [&](Point a, Point b) {
            double dx = std::abs(b.x - a.x), dy = std::abs(b.y - a.y);
            if (dx >= dy) {
                int n = std::max(1, int(std::ceil(dx / spacing)));
                for (int i = 1; i < n; ++i) {
                    double x = a.x + (b.x - a.x) * (double(i) / n);
                    out.push_back({x, hsy + hd / (x - hsx)});
                }
            } else {
                int n = std::max(1, int(std::ceil(dy / spacing)));
                for (int i = 1; i < n; ++i) {
                    double y = a.y + (b.y - a.y) * (double(i) / n);
                    out.push_back({hsx + hd / (y - hsy), y});
                }
            }
        };
        if (v_inside) {
            // Split at the hyperbola vertex: each side is monotone with
            // slope bounded by 1 along its dominant axis.
            branch(p, v);
            out.push_back(v);
            branch(v, q);
        } else {
            size_t before = out.size();
            branch(p, q);
            if (out.size() == before) {
                // Guarantee one interior sample per cell so tiny lines still
                // make valid polygons; put it on the hyperbola.
                Point m;
                if (std::abs(q.x - p.x) >= std::abs(q.y - p.y)) {
                    m.x = (p.x + q.x) / 2;
                    m.y = hsy + hd / (m.x - hsx);
                } else {
                    m.y = (p.y + q.y) / 2;
                    m.x = hsx + hd / (m.y - hsy);
                }
                out.push_back(m);
            }
        }
    }
};

std::vector<Point> trace_line(const ImageGrid& g, double level, double delta,
                              std::vector<int>& stamp, int tag, int scx, int scy) {
    Walker walk(g, level, delta, stamp, tag);
    walk.cx = scx;
    walk.cy = scy;
    walk.dir = kS;
    walk.load_cell();
    Point p = walk.entry_point();

    std::vector<Point> verts;
    const long guard = 16L * g.width() * g.height() + 64;
    long iter = 0;
    while (walk.mark()) {
        if (verts.empty() || !(verts.back() == p))
            verts.push_back(p);
        // Capture the cell geometry before moving off it.
        bool hyper = walk.denom != 0;
        double hsx = walk.sx, hsy = walk.sy, hd = walk.hdelta;
        int cellx = walk.cx, celly = walk.cy;
        Point q = walk.move();
        walk.sample_arc(p, q, hyper, hsx, hsy, hd, cellx, celly, verts);
        p = q;
        if (++iter > guard)
            throw GeometryError("level line failed to close (degenerate level?)");
    }
    if (verts.size() > 1 && verts.front() == verts.back())
        verts.pop_back();
    return verts;
}

} // namespace

std::vector<double> quantized_levels(const ImageGrid& g, double q, double offset) {
    return quantized_levels(g, q, offset, critical_levels(g));
}

std::vector<double> quantized_levels(const ImageGrid& g, double q, double offset,
                                     const std::vector<double>& critical) {
    if (q <= 0)
        throw ParamError("quantization step must be positive");
    auto [lo, hi] = g.value_range();
    if (!(hi > lo))
        return {};

    // Degenerate levels to steer clear of: critical levels, plus raw sample
    // values (a level through a sample breaks the edge-crossing parity).
    std::vector<double> avoid = critical;
    avoid.insert(avoid.end(), g.samples().begin(), g.samples().end());
    std::sort(avoid.begin(), avoid.end());
    avoid.erase(std::unique(avoid.begin(), avoid.end()), avoid.end());

    auto too_close = [&](double level) {
        auto it = std::lower_bound(avoid.begin(), avoid.end(), level);
        if (it != avoid.end() && *it - level < 1e-6)
            return true;
        if (it != avoid.begin() && level - *(it - 1) < 1e-6)
            return true;
        return false;
    };

    std::vector<double> out;
    long k0 = long(std::floor((lo - offset) / q)) + 1;
    for (long k = k0;; ++k) {
        double level = offset + double(k) * q;
        if (level >= hi)
            break;
        int tries = 0;
        while (too_close(level)) {
            level += 1e-6;
            if (++tries > 100000)
                throw ParamError("cannot nudge level away from critical values");
        }
        if (level < hi)
            out.push_back(level);
    }
    return out;
}

namespace {

std::vector<LevelLine> extract_at(const ImageGrid& g, double level, double delta,
                                  std::vector<int>& stamp, int tag) {
    const int w = g.width(), h = g.height();
    std::vector<LevelLine> out;
    for (int r = 0; r + 1 < h; ++r)
        for (int c = 0; c + 1 < w; ++c) {
            if (stamp[size_t(r) * w + c] == tag)
                continue;
            if (!(g.at(c, r) < level && level < g.at(c + 1, r)))
                continue;
            std::vector<Point> verts = trace_line(g, level, delta, stamp, tag, c, r);
            if (verts.size() < 3)
                continue; // fully degenerate; cannot happen off critical levels
            if (g.origin_x() != 0 || g.origin_y() != 0)
                for (Point& p : verts) {
                    p.x += g.origin_x();
                    p.y += g.origin_y();
                }
            LevelLine ll;
            ll.polygon = Polygon(std::move(verts));
            ll.level = level;
            ll.nominal_level = level;
            ll.inner_value = level;
            ll.upper = ll.polygon.signed_area() < 0; // interior on the left
            out.push_back(std::move(ll));
        }
    return out;
}

} // namespace

std::vector<LevelLine> extract_level_lines(const ImageGrid& g, double level,
                                           double delta) {
    if (delta <= 0)
        throw ParamError("vertex spacing delta must be positive");
    std::vector<double> crit = critical_levels(g);
    auto it = std::lower_bound(crit.begin(), crit.end(), level);
    double nearest = 1e300;
    if (it != crit.end())
        nearest = std::min(nearest, *it - level);
    if (it != crit.begin())
        nearest = std::min(nearest, level - *(it - 1));
    if (nearest < 1e-12) {
        std::ostringstream os;
        os << "level " << level << " is critical; nudge it off the critical set";
        throw ParamError(os.str());
    }
    std::vector<int> stamp(size_t(g.width()) * g.height(), -1);
    auto lines = extract_at(g, level, delta, stamp, 0);
    std::sort(lines.begin(), lines.end(), [](const LevelLine& a, const LevelLine& b) {
        const Point pa = a.polygon.vertex(0), pb = b.polygon.vertex(0);
        return std::tie(pa.x, pa.y) < std::tie(pb.x, pb.y);
    });
    return lines;
}

std::vector<LevelLine> extract_family(const ImageGrid& g,
                                      const std::vector<double>& levels,
                                      double delta, int threads,
                                      const std::vector<double>* nominal) {
    if (delta <= 0)
        throw ParamError("vertex spacing delta must be positive");
    if (nominal && nominal->size() != levels.size())
        throw ParamError("nominal level list size mismatch");

    std::vector<std::vector<LevelLine>> per_level(levels.size());
    const int nthreads =
        std::max(1, std::min<int>(threads, int(levels.size())));

    auto work = [&](std::atomic<size_t>& next) {
        std::vector<int> stamp(size_t(g.width()) * g.height(), -1);
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= levels.size())
                break;
            per_level[i] = extract_at(g, levels[i], delta, stamp, int(i));
            if (nominal)
                for (LevelLine& ll : per_level[i])
                    ll.nominal_level = (*nominal)[i];
        }
    };

    std::atomic<size_t> next{0};
    if (nthreads == 1) {
        work(next);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                try {
                    work(next);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(levels.size());
                }
            });
        for (auto& t : pool)
            t.join();
        if (error)
            std::rethrow_exception(error);
    }

    std::vector<LevelLine> out;
    for (auto& bucket : per_level) {
        std::sort(bucket.begin(), bucket.end(),
                  [](const LevelLine& a, const LevelLine& b) {
                      const Point pa = a.polygon.vertex(0), pb = b.polygon.vertex(0);
                      return std::tie(pa.x, pa.y) < std::tie(pb.x, pb.y);
                  });
        for (auto& ll : bucket)
            out.push_back(std::move(ll));
    }
    for (size_t i = 0; i < out.size(); ++i)
        out[i].id = int(i);
    return out;
}

void assign_inner_values(std::vector<LevelLine>& lines,
                         const std::vector<double>& levels, double q) {
    if (levels.empty())
        return;
    auto gap_above = [&](size_t i) {
        if (i + 1 < levels.size())
            return levels[i + 1] - levels[i];
        return i > 0 ? levels[i] - levels[i - 1] : q;
    };
    auto gap_below = [&](size_t i) {
        if (i > 0)
            return levels[i] - levels[i - 1];
        return levels.size() > 1 ? levels[1] - levels[0] : q;
    };
    for (LevelLine& ll : lines) {
        auto it = std::lower_bound(levels.begin(), levels.end(),
                                   ll.nominal_level - 1e-12);
        size_t i = size_t(it - levels.begin());
        if (i >= levels.size())
            i = levels.size() - 1;
        ll.inner_value = ll.upper ? ll.nominal_level + gap_above(i) / 2
                                  : ll.nominal_level - gap_below(i) / 2;
    }
}

} // namespace lls
