#include "geometry.h"

#include "errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lls {

double norm(Point a) { return std::sqrt(a.x * a.x + a.y * a.y); }
double dist(Point a, Point b) { return norm(a - b); }

double signed_area(const std::vector<Point>& v) {
    double a = 0;
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point &p = v[i], &q = v[(i + 1) % n];
        a += cross(p, q);
    }
    return a / 2;
}

double perimeter(const std::vector<Point>& v) {
    double l = 0;
    for (size_t i = 0, n = v.size(); i < n; ++i)
        l += dist(v[i], v[(i + 1) % n]);
    return l;
}

Polygon::Polygon(std::vector<Point> vertices) : verts_(std::move(vertices)) {
    if (verts_.size() < 3)
        throw GeometryError("polygon needs at least 3 vertices");
    bbox_.xmin = bbox_.xmax = verts_[0].x;
    bbox_.ymin = bbox_.ymax = verts_[0].y;
    double a2 = 0, cx = 0, cy = 0;
    for (size_t i = 0, n = verts_.size(); i < n; ++i) {
        const Point &p = verts_[i], &q = verts_[(i + 1) % n];
        double w = cross(p, q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
        length_ += dist(p, q);
        bbox_.xmin = std::min(bbox_.xmin, p.x);
        bbox_.xmax = std::max(bbox_.xmax, p.x);
        bbox_.ymin = std::min(bbox_.ymin, p.y);
        bbox_.ymax = std::max(bbox_.ymax, p.y);
    }
    signed_area_ = a2 / 2;
    if (a2 != 0) {
        centroid_ = {cx / (3 * a2), cy / (3 * a2)};
    } else { // degenerate; fall back to the vertex mean
        for (const Point& p : verts_) {
            centroid_.x += p.x;
            centroid_.y += p.y;
        }
        centroid_.x /= double(verts_.size());
        centroid_.y /= double(verts_.size());
    }
}

bool point_in_polygon(Point p, const Polygon& poly) {
    const auto& v = poly.vertices();
    if (p.x < poly.bbox().xmin || p.x > poly.bbox().xmax ||
        p.y < poly.bbox().ymin || p.y > poly.bbox().ymax)
        return false;
    bool in = false;
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point &a = v[i], &b = v[(i + 1) % n];
        // Half-open rule on y resolves crossings through vertices.
        if ((a.y <= p.y) != (b.y <= p.y)) {
            double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xc > p.x)
                in = !in;
        }
    }
    return in;
}

namespace {

inline double orient(Point a, Point b, Point c) {
    return cross(b - a, c - a);
}

/// Proper crossing of open segments (shared endpoints do not count).
bool segments_cross(Point a, Point b, Point c, Point d) {
    double d1 = orient(c, d, a), d2 = orient(c, d, b);
    double d3 = orient(a, b, c), d4 = orient(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return false;
}

double point_segment_dist2(Point p, Point a, Point b) {
    Point ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 > 0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    Point proj = a + ab * t;
    Point d = p - proj;
    return dot(d, d);
}

double segment_segment_dist2(Point a, Point b, Point c, Point d) {
    if (segments_cross(a, b, c, d))
        return 0.0;
    double m = point_segment_dist2(a, c, d);
    m = std::min(m, point_segment_dist2(b, c, d));
    m = std::min(m, point_segment_dist2(c, a, b));
    m = std::min(m, point_segment_dist2(d, a, b));
    return m;
}

} // namespace

bool polygons_intersect(const Polygon& a, const Polygon& b) {
    if (!a.bbox().overlaps(b.bbox()))
        return false;
    const auto &va = a.vertices(), &vb = b.vertices();
    for (size_t i = 0, n = va.size(); i < n; ++i) {
        Point p = va[i], q = va[(i + 1) % n];
        Rect sb{std::min(p.x, q.x), std::min(p.y, q.y),
                std::max(p.x, q.x), std::max(p.y, q.y)};
        if (!sb.overlaps(b.bbox()))
            continue;
        for (size_t j = 0, m = vb.size(); j < m; ++j)
            if (segments_cross(p, q, vb[j], vb[(j + 1) % m]))
                return true;
    }
    return false;
}

bool surrounds(const Polygon& a, const Polygon& b) {
    if (a.bbox().overlaps(b.bbox()) && polygons_intersect(a, b))
        throw GeometryError("surrounds: polygons intersect");
    // Disjoint Jordan curves lie entirely on one side of each other, so one
    // vertex decides.
    return point_in_polygon(a.vertex(0), b);
}

double min_distance(const Polygon& a, const Polygon& b) {
    const auto &va = a.vertices(), &vb = b.vertices();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0, n = va.size(); i < n; ++i) {
        Point p = va[i], q = va[(i + 1) % n];
        double sxmin = std::min(p.x, q.x), sxmax = std::max(p.x, q.x);
        double symin = std::min(p.y, q.y), symax = std::max(p.y, q.y);
        for (size_t j = 0, m = vb.size(); j < m; ++j) {
            Point c = vb[j], d = vb[(j + 1) % m];
            // Cheap reject against the current best before the exact test.
            double dx = std::max({sxmin - std::max(c.x, d.x),
                                  std::min(c.x, d.x) - sxmax, 0.0});
            double dy = std::max({symin - std::max(c.y, d.y),
                                  std::min(c.y, d.y) - symax, 0.0});
            if (dx * dx + dy * dy >= best)
                continue;
            best = std::min(best, segment_segment_dist2(p, q, c, d));
            if (best == 0)
                return 0;
        }
    }
    return std::sqrt(best);
}

double curvature_at(const Polygon& poly, size_t i) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    Point a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
    double du = dist(a, b), dv = dist(b, c), dw = dist(a, c);
    double denom = du * dv * dw;
    if (denom == 0)
        return 0;
    double k = 2 * cross(b - a, c - b) / denom;
    // Positive curvature = bending toward the interior, independent of the
    // traversal direction.
    if (poly.signed_area() < 0)
        k = -k;
    return std::abs(k) < 1e-12 ? 0.0 : k;
}

Polygon resample(Polygon poly, double delta, size_t min_vertices) {
    if (delta <= 0)
        throw ParamError("resample spacing must be positive");
    const auto& v = poly.vertices();
    const size_t n = v.size();

    // Redistribute before the spacing drifts out of [0.75 delta, delta]:
    // explicit curvature steps sized for delta turn unstable once the actual
    // spacing approaches delta/2 (dt/h^2 crosses the heat-flow bound).
    // Squared comparisons; this check runs every flow step.
    const double hi2 = delta * delta;
    const double lo2 = 0.75 * delta * 0.75 * delta;
    bool in_band = n >= min_vertices;
    for (size_t i = 0; i < n && in_band; ++i) {
        Point d = v[i] - v[(i + 1) % n];
        double d2 = dot(d, d);
        in_band = d2 <= hi2 && d2 >= lo2;
    }
    if (in_band)
        return poly;

    const double total = poly.length();
    size_t count = std::max(min_vertices, size_t(std::ceil(total / delta)));
    const double spacing = total / double(count);

    std::vector<Point> out;
    out.reserve(count);
    size_t seg = 0;
    double seg_start = 0;                       // arc length at v[seg]
    double seg_len = dist(v[0], v[1 % n]);
    for (size_t k = 0; k < count; ++k) {
        double target = double(k) * spacing;
        while (seg_start + seg_len < target && seg + 1 < n) {
            seg_start += seg_len;
            ++seg;
            seg_len = dist(v[seg], v[(seg + 1) % n]);
        }
        double t = seg_len > 0 ? (target - seg_start) / seg_len : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        Point a = v[seg], b = v[(seg + 1) % n];
        out.push_back(a + (b - a) * t);
    }
    return Polygon(std::move(out));
}

std::optional<std::pair<size_t, size_t>> find_self_intersection(const Polygon& poly) {
    return self_intersection_scan(poly).crossing;
}

SelfScanResult self_intersection_scan(const Polygon& poly) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    SelfScanResult result;
    if (n < 4) {
        result.far_pairs_close = false;
        return result;
    }

    // Hash segments by the cell of their midpoint; cell size >= the longest
    // segment, so crossing pairs always land in neighboring cells. Scratch
    // buffers persist per thread; this runs inside the flow loop.
    double maxlen2 = 0;
    for (size_t i = 0; i < n; ++i) {
        Point d = v[i] - v[(i + 1) % n];
        maxlen2 = std::max(maxlen2, dot(d, d));
    }
    const double cell = std::max(std::sqrt(maxlen2), 1e-12);
    result.cell = cell;
    result.far_pairs_close = false;

    size_t cap = 1;
    while (cap < 2 * n)
        cap <<= 1;
    const size_t mask = cap - 1;
    thread_local std::vector<int> head, next;
    thread_local std::vector<long long> cx, cy;
    head.assign(cap, -1);
    next.assign(n, -1);
    cx.resize(n);
    cy.resize(n);

    auto hash = [&](long long x, long long y) {
        unsigned long long h = (unsigned long long)x * 0x9e3779b97f4a7c15ULL ^
                               (unsigned long long)y * 0xc2b2ae3d27d4eb4fULL;
        return size_t(h) & mask;
    };

    for (size_t i = 0; i < n; ++i) {
        Point m = (v[i] + v[(i + 1) % n]) * 0.5;
        cx[i] = (long long)std::floor(m.x / cell);
        cy[i] = (long long)std::floor(m.y / cell);
    }
    for (size_t i = 0; i < n; ++i) {
        size_t h = hash(cx[i], cy[i]);
        next[i] = head[h];
        head[h] = int(i);
    }
    for (size_t i = 0; i < n; ++i) {
        Point p = v[i], q = v[(i + 1) % n];
        for (long long dx = -2; dx <= 2; ++dx)
            for (long long dy = -2; dy <= 2; ++dy) {
                for (int j = head[hash(cx[i] + dx, cy[i] + dy)]; j >= 0; j = next[j]) {
                    size_t sj = size_t(j);
                    if (sj <= i)
                        continue;
                    if (cx[sj] != cx[i] + dx || cy[sj] != cy[i] + dy)
                        continue; // hash collision
                    size_t gap = std::min(sj - i, n - (sj - i));
                    if (gap <= 1)
                        continue; // segments sharing a vertex
                    // Pairs up to gap 4 ride within two cells on any smooth
                    // curve; folding among them needs curvatures far above
                    // the caller's per-step-scan gate.
                    if (gap > 4)
                        result.far_pairs_close = true;
                    // Only the 3x3 core can actually cross (cell >= maxlen).
                    if (std::abs(dx) <= 1 && std::abs(dy) <= 1 &&
                        segments_cross(p, q, v[sj], v[(sj + 1) % n])) {
                        result.crossing = std::make_pair(i, sj);
                        return result;
                    }
                }
            }
    }
    return result;
}

bool is_convex(const Polygon& poly, double rel_tol) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    int sign = 0;
    for (size_t i = 0; i < n; ++i) {
        Point u = v[(i + 1) % n] - v[i];
        Point w = v[(i + 2) % n] - v[(i + 1) % n];
        double c = cross(u, w);
        double scale = norm(u) * norm(w);
        if (std::abs(c) <= rel_tol * scale)
            continue; // collinear within tolerance
        int s = c > 0 ? 1 : -1;
        if (sign == 0)
            sign = s;
        else if (s != sign)
            return false;
    }
    return true;
}

RegionMoments region_moments(const Polygon& poly) {
    // Green's theorem over the triangle fan from the origin; moments are
    // reduced about the centroid at the end.
    const auto& v = poly.vertices();
    double a2 = 0, cx = 0, cy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0, n = v.size(); i < n; ++i) {
        const Point &p = v[i], &q = v[(i + 1) % n];
        double w = cross(p, q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
        sxx += (p.x * p.x + p.x * q.x + q.x * q.x) * w;
        sxy += (p.x * (2 * p.y + q.y) + q.x * (p.y + 2 * q.y)) * w;
        syy += (p.y * p.y + p.y * q.y + q.y * q.y) * w;
    }
    double area = a2 / 2;
    RegionMoments m;
    if (area == 0)
        return m;
    m.centroid = {cx / (3 * a2), cy / (3 * a2)};
    // Second moments about the centroid, normalized by area.
    m.cxx = sxx / (6 * a2) - m.centroid.x * m.centroid.x;
    m.cxy = sxy / (12 * a2) - m.centroid.x * m.centroid.y;
    m.cyy = syy / (6 * a2) - m.centroid.y * m.centroid.y;
    m.area = std::abs(area);
    return m;
}

Polygon linear_transform(const Polygon& poly, double m00, double m01, double m10,
                         double m11, Point translate) {
    std::vector<Point> out;
    out.reserve(poly.size());
    for (const Point& p : poly.vertices())
        out.push_back({m00 * p.x + m01 * p.y + translate.x,
                       m10 * p.x + m11 * p.y + translate.y});
    return Polygon(std::move(out));
}

namespace {

double one_sided_hausdorff(const Polygon& a, const Polygon& b, double spacing) {
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    double worst = 0;
    for (size_t i = 0, n = va.size(); i < n; ++i) {
        Point p = va[i], q = va[(i + 1) % n];
        int steps = std::max(1, int(std::ceil(dist(p, q) / spacing)));
        for (int s = 0; s < steps; ++s) {
            Point x = p + (q - p) * (double(s) / steps);
            double best = std::numeric_limits<double>::infinity();
            for (size_t j = 0, m = vb.size(); j < m; ++j)
                best = std::min(best,
                                point_segment_dist2(x, vb[j], vb[(j + 1) % m]));
            worst = std::max(worst, best);
        }
    }
    return std::sqrt(worst);
}

} // namespace

double hausdorff_distance(const Polygon& a, const Polygon& b, double sample_spacing) {
    return std::max(one_sided_hausdorff(a, b, sample_spacing),
                    one_sided_hausdorff(b, a, sample_spacing));
}

} // namespace lls
