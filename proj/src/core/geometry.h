#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lls {

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double x_, double y_) : x(x_), y(y_) {}

    Point operator+(Point p) const { return {x + p.x, y + p.y}; }
    Point operator-(Point p) const { return {x - p.x, y - p.y}; }
    Point operator*(double f) const { return {x * f, y * f}; }
    bool operator==(const Point&) const = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a);
double dist(Point a, Point b);

/// Curvature vector at b given neighbors a, c: magnitude 1/R of the
/// circumscribed circle, pointing toward its center. Zero for collinear
/// triples. Orientation independent.
inline Point curvature_vector(Point a, Point b, Point c) {
    Point u = a - b, v = c - b;
    double cr = cross(u, v);
    if (cr == 0)
        return {};
    double u2 = dot(u, u), v2 = dot(v, v);
    Point w = c - a;
    double w2 = dot(w, w);
    if (u2 == 0 || v2 == 0 || w2 == 0)
        return {};
    // The circumcenter offset from b is (v.y*u2 - u.y*v2, u.x*v2 - v.x*u2)
    // / (2 cr); scaling by |k|^2 = (2 cr)^2 / (u2 v2 w2) gives the curvature
    // vector without any square root.
    double s = 2 * cr / (u2 * v2 * w2);
    return {(v.y * u2 - u.y * v2) * s, (u.x * v2 - v.x * u2) * s};
}

struct Rect {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
    bool overlaps(const Rect& o) const {
        return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
    }
    bool contains(const Rect& o) const {
        return xmin <= o.xmin && o.xmax <= xmax && ymin <= o.ymin && o.ymax <= ymax;
    }
};

/// Closed polygon stored as an open vertex list (the last vertex connects
/// back to the first implicitly). Signed area, length, centroid and the
/// bounding box are computed once at construction; vertices are immutable
/// afterwards.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    size_t size() const { return verts_.size(); }
    Point vertex(size_t i) const { return verts_[i]; }

    double signed_area() const { return signed_area_; }
    double length() const { return length_; }
    Point centroid() const { return centroid_; }
    const Rect& bbox() const { return bbox_; }

private:
    std::vector<Point> verts_;
    double signed_area_ = 0.0;
    double length_ = 0.0;
    Point centroid_;
    Rect bbox_;
};

/// Shoelace area of a closed vertex loop; positive for counterclockwise
/// traversal in the (x right, y up) sense.
double signed_area(const std::vector<Point>& verts);
double perimeter(const std::vector<Point>& verts);

/// Even-odd containment test; points exactly on the boundary are not
/// guaranteed either way.
bool point_in_polygon(Point p, const Polygon& poly);

/// Partial order on disjoint Jordan curves: surrounds(a, b) is true iff
/// Int(a) is a subset of Int(b). Note the direction: the smaller curve
/// surrounds the larger one under this order. Throws GeometryError if the
/// polygons cross.
bool surrounds(const Polygon& a, const Polygon& b);

/// Whether any segment of a properly crosses a segment of b.
bool polygons_intersect(const Polygon& a, const Polygon& b);

/// Minimum Euclidean distance between the two polygon boundaries
/// (0 if they touch or cross).
double min_distance(const Polygon& a, const Polygon& b);

/// Signed curvature at vertex i from the circumscribed circle of vertices
/// (i-1, i, i+1); positive where the curve bends toward the polygon interior.
/// Near-collinear triples (|k| < 1e-12) report 0.
double curvature_at(const Polygon& poly, size_t i);

/// Redistribute vertices at uniform arc-length spacing within [delta/2,
/// delta] (at least min_vertices of them). Polygons already within the
/// spacing band are passed through unchanged. New vertices lie on the input
/// polygon, so the shape error is bounded by the chord sagitta.
Polygon resample(Polygon poly, double delta, size_t min_vertices = 8);

/// First properly crossing pair of non-adjacent segments, if any
/// (segment i spans vertices i -> i+1).
std::optional<std::pair<size_t, size_t>> find_self_intersection(const Polygon& poly);

/// Full scan result with a separation certificate for incremental callers:
/// when no segment pair with index gap > 4 lies within two hash cells
/// (Chebyshev), every such pair is at least `cell` apart, so no crossing can
/// form until accumulated motion spends that margin.
struct SelfScanResult {
    std::optional<std::pair<size_t, size_t>> crossing;
    bool far_pairs_close = true;
    double cell = 0; // hash cell size = longest segment
};
SelfScanResult self_intersection_scan(const Polygon& poly);

/// All turns have a consistent sign; rel_tol absorbs float noise on
/// near-collinear triples.
bool is_convex(const Polygon& poly, double rel_tol = 1e-9);

/// Area moments of the enclosed region: centroid and central second moments.
struct RegionMoments {
    double area = 0.0; // absolute
    Point centroid;
    double cxx = 0.0, cxy = 0.0, cyy = 0.0;
};
RegionMoments region_moments(const Polygon& poly);

/// Apply the linear map [[m00,m01],[m10,m11]] then translate.
Polygon linear_transform(const Polygon& poly, double m00, double m01, double m10,
                         double m11, Point translate = {});

/// Hausdorff distance between the two polygon boundaries, measured by dense
/// sampling at the given spacing. Intended for tests.
double hausdorff_distance(const Polygon& a, const Polygon& b, double sample_spacing);

} // namespace lls
