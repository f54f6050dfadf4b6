#include "raster.h"

#include "errors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lls {

namespace {

std::vector<int> preorder_of(const std::vector<int>& parent) {
    const size_t n = parent.size();
    std::vector<std::vector<int>> children(n);
    std::vector<int> roots;
    for (size_t i = 0; i < n; ++i) {
        if (parent[i] < 0)
            roots.push_back(int(i));
        else
            children[size_t(parent[i])].push_back(int(i));
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> stack(roots.rbegin(), roots.rend());
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        order.push_back(i);
        for (auto it = children[size_t(i)].rbegin();
             it != children[size_t(i)].rend(); ++it)
            stack.push_back(*it);
    }
    return order;
}

} // namespace

EvolvedTree splice_evolved(const InclusionTree& initial,
                           const std::vector<EvolvedCurve>& evolved) {
    if (evolved.size() != initial.size())
        throw ParamError("evolved family size does not match the tree");

    const size_t n = initial.size();
    std::vector<int> new_index(n, -1);
    EvolvedTree out;
    for (size_t i = 0; i < n; ++i) {
        if (!evolved[i].alive) {
            ++out.collapsed;
            continue;
        }
        new_index[i] = int(out.lines.size());
        LevelLine ll = initial.lines()[i];
        ll.polygon = evolved[i].polygon;
        out.lines.push_back(std::move(ll));
    }
    out.parent.assign(out.lines.size(), -1);
    for (size_t i = 0; i < n; ++i) {
        if (new_index[i] < 0)
            continue;
        int p = initial.parent(i);
        while (p >= 0 && new_index[size_t(p)] < 0)
            p = initial.parent(size_t(p)); // nearest surviving ancestor
        out.parent[size_t(new_index[i])] = p < 0 ? -1 : new_index[size_t(p)];
    }
    out.preorder = preorder_of(out.parent);

    // The inclusion principle guarantees the nesting survives; assert it.
    for (size_t i = 0; i < out.lines.size(); ++i) {
        int p = out.parent[i];
        if (p < 0)
            continue;
        if (!point_in_polygon(out.lines[i].polygon.vertex(0),
                              out.lines[size_t(p)].polygon)) {
            std::ostringstream os;
            os << "evolved line " << out.lines[i].id
               << " escaped its parent " << out.lines[size_t(p)].id;
            throw GeometryError(os.str());
        }
    }
    return out;
}

EvolvedTree as_evolved(const InclusionTree& initial) {
    EvolvedTree out;
    out.lines = initial.lines();
    out.parent.assign(out.lines.size(), -1);
    for (size_t i = 0; i < out.lines.size(); ++i)
        out.parent[i] = initial.parent(i);
    out.preorder = initial.preorder();
    return out;
}

void fill_polygon(const Polygon& poly, double value, ImageGrid& img) {
    const auto& v = poly.vertices();
    const size_t n = v.size();
    const int h = img.height(), w = img.width();
    int y0 = std::max(0, int(std::ceil(poly.bbox().ymin)));
    int y1 = std::min(h - 1, int(std::floor(poly.bbox().ymax)));
    if (y0 > y1)
        return;

    std::vector<std::vector<double>> rows(size_t(y1 - y0 + 1));
    for (size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        if (a.y == b.y)
            continue; // horizontal edges contribute no crossings
        double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
        // Half-open span [ylo, yhi) so shared vertices count once.
        int first = std::max(y0, int(std::ceil(ylo)));
        int last = std::min(y1, int(std::floor(yhi)));
        if (double(last) == yhi)
            --last;
        for (int y = first; y <= last; ++y) {
            double t = (y - a.y) / (b.y - a.y);
            rows[size_t(y - y0)].push_back(a.x + t * (b.x - a.x));
        }
    }
    for (int y = y0; y <= y1; ++y) {
        auto& xs = rows[size_t(y - y0)];
        std::sort(xs.begin(), xs.end());
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            int x_first = std::max(0, int(std::ceil(xs[k])));
            int x_last = std::min(w - 1, int(std::floor(xs[k + 1])));
            for (int x = x_first; x <= x_last; ++x)
                img.at(x, y) = value;
        }
    }

    // Inclusive rule: a center exactly on an edge takes the inner value even
    // where the half-open spans exclude it.
    for (size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        if (a.y == b.y) {
            if (a.y == std::floor(a.y) && a.y >= 0 && a.y < h) {
                int first = std::max(0, int(std::ceil(std::min(a.x, b.x))));
                int last = std::min(w - 1, int(std::floor(std::max(a.x, b.x))));
                for (int x = first; x <= last; ++x)
                    img.at(x, int(a.y)) = value;
            }
            continue;
        }
        int first = std::max(0, int(std::ceil(std::min(a.y, b.y))));
        int last = std::min(h - 1, int(std::floor(std::max(a.y, b.y))));
        for (int y = first; y <= last; ++y) {
            double x = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x == std::floor(x) && x >= 0 && x < w)
                img.at(int(x), y) = value;
        }
    }
}

ImageGrid rasterize(const EvolvedTree& tree, int width, int height,
                    double background) {
    ImageGrid img(width, height, background);
    for (int i : tree.preorder)
        fill_polygon(tree.lines[size_t(i)].polygon,
                     tree.lines[size_t(i)].inner_value, img);
    return img;
}

double lipschitz_estimate(const EvolvedTree& tree) {
    if (tree.lines.size() < 2)
        return 0;
    double worst = 0;
    for (size_t i = 0; i < tree.lines.size(); ++i) {
        int p = tree.parent[i];
        if (p < 0)
            continue;
        const LevelLine &child = tree.lines[i], &par = tree.lines[size_t(p)];
        double gap = min_distance(child.polygon, par.polygon);
        double dl = std::abs(child.level - par.level);
        if (dl == 0)
            continue;
        if (gap == 0)
            return std::numeric_limits<double>::infinity();
        worst = std::max(worst, dl / gap);
    }
    return worst;
}

} // namespace lls
