#include "svg.h"

#include "errors.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace lls {

namespace {

struct Rgb {
    int r, g, b;
};

/// Cold-to-hot ramp (blue -> cyan -> yellow -> red) over t in [0,1].
Rgb heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    auto lerp = [](int a, int b, double f) { return int(std::lround(a + (b - a) * f)); };
    if (t < 1.0 / 3)
        return {lerp(32, 0, t * 3), lerp(64, 192, t * 3), lerp(160, 192, t * 3)};
    if (t < 2.0 / 3)
        return {lerp(0, 232, (t - 1.0 / 3) * 3), lerp(192, 200, (t - 1.0 / 3) * 3),
                lerp(192, 48, (t - 1.0 / 3) * 3)};
    return {lerp(232, 192, (t - 2.0 / 3) * 3), lerp(200, 16, (t - 2.0 / 3) * 3),
            lerp(48, 32, (t - 2.0 / 3) * 3)};
}

/// Diverging ramp for signed values, blue (negative) to white to red.
Rgb diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    auto lerp = [](int a, int b, double f) { return int(std::lround(a + (b - a) * f)); };
    if (t < 0)
        return {lerp(255, 32, -t), lerp(255, 64, -t), lerp(255, 192, -t)};
    return {lerp(255, 192, t), lerp(255, 16, t), lerp(255, 32, t)};
}

void color_attr(std::string& out, Rgb c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    out += buf;
}

void coord(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    out += buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError(path + ": cannot open for writing");
    return out;
}

void svg_header(std::string& s, double width, double height) {
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    coord(s, width);
    s += "\" height=\"";
    coord(s, height);
    s += "\" viewBox=\"0 0 ";
    coord(s, width);
    s += " ";
    coord(s, height);
    s += "\">\n";
}

} // namespace

void write_svg_lines(const std::string& path, const std::vector<LevelLine>& lines,
                     double width, double height) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& ll : lines) {
        lo = std::min(lo, ll.level);
        hi = std::max(hi, ll.level);
    }
    const double span = hi > lo ? hi - lo : 1.0;

    std::string s;
    svg_header(s, width, height);
    for (const auto& ll : lines) {
        s += "<path fill=\"none\" stroke-width=\"0.15\" stroke=\"";
        color_attr(s, heat_color((ll.level - lo) / span));
        s += "\" d=\"M ";
        const auto& v = ll.polygon.vertices();
        for (size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += " L ";
            coord(s, v[i].x);
            s += " ";
            coord(s, v[i].y);
        }
        s += " Z\"/>\n";
    }
    s += "</svg>\n";
    open_out(path) << s;
}

void write_svg_curvature(const std::string& path,
                         const std::vector<LevelLine>& lines, double width,
                         double height) {
    // Symmetric color scale from the 95th percentile of |k|.
    std::vector<double> mags;
    for (const auto& ll : lines)
        for (size_t i = 0; i < ll.polygon.size(); ++i)
            mags.push_back(std::abs(curvature_at(ll.polygon, i)));
    double scale = 1.0;
    if (!mags.empty()) {
        size_t q = mags.size() * 95 / 100;
        std::nth_element(mags.begin(), mags.begin() + q, mags.end());
        scale = std::max(mags[q], 1e-12);
    }

    std::string s;
    svg_header(s, width + 18, height); // room for the legend strip
    for (const auto& ll : lines) {
        const auto& v = ll.polygon.vertices();
        const size_t n = v.size();
        for (size_t i = 0; i < n; ++i) {
            double k = curvature_at(ll.polygon, i);
            s += "<line stroke-width=\"0.25\" stroke=\"";
            color_attr(s, diverging_color(k / scale));
            s += "\" x1=\"";
            coord(s, v[i].x);
            s += "\" y1=\"";
            coord(s, v[i].y);
            s += "\" x2=\"";
            coord(s, v[(i + 1) % n].x);
            s += "\" y2=\"";
            coord(s, v[(i + 1) % n].y);
            s += "\"/>\n";
        }
    }
    // Legend: vertical gradient bar, +scale at the top, -scale at the bottom.
    const int bands = 32;
    for (int b = 0; b < bands; ++b) {
        double t = 1.0 - 2.0 * b / (bands - 1);
        s += "<rect width=\"6\" x=\"";
        coord(s, width + 4);
        s += "\" y=\"";
        coord(s, height * b / bands);
        s += "\" height=\"";
        coord(s, height / bands + 0.5);
        s += "\" fill=\"";
        color_attr(s, diverging_color(t));
        s += "\"/>\n";
    }
    char label[64];
    std::snprintf(label, sizeof label,
                  "<text x=\"%.1f\" y=\"6\" font-size=\"5\">+%.3g</text>\n",
                  width + 10.5, scale);
    s += label;
    std::snprintf(label, sizeof label,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"5\">-%.3g</text>\n",
                  width + 10.5, height - 1.0, scale);
    s += label;
    s += "</svg>\n";
    open_out(path) << s;
}

void write_tree_json(const std::string& path, const EvolvedTree& tree,
                     bool with_vertices) {
    nlohmann::json lines = nlohmann::json::array();
    for (size_t i = 0; i < tree.lines.size(); ++i) {
        const LevelLine& ll = tree.lines[i];
        nlohmann::json j{{"id", ll.id},
                         {"level", ll.level},
                         {"inner_value", ll.inner_value},
                         {"parent", tree.parent[i] < 0
                                        ? -1
                                        : tree.lines[size_t(tree.parent[i])].id},
                         {"area", ll.polygon.signed_area()},
                         {"vertex_count", ll.polygon.size()}};
        if (with_vertices) {
            nlohmann::json verts = nlohmann::json::array();
            for (const Point& p : ll.polygon.vertices())
                verts.push_back({p.x, p.y});
            j["vertices"] = std::move(verts);
        }
        lines.push_back(std::move(j));
    }
    nlohmann::json doc{{"line_count", tree.lines.size()},
                       {"collapsed_count", tree.collapsed},
                       {"lines", std::move(lines)}};
    open_out(path) << doc.dump(with_vertices ? -1 : 1) << "\n";
}

} // namespace lls
