#include "tree.h"

#include "errors.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lls {

InclusionTree::InclusionTree(std::vector<LevelLine> lines)
    : lines_(std::move(lines)) {
    const size_t n = lines_.size();
    parent_.assign(n, -1);
    children_.assign(n, {});

    // Candidate parents in area order: the first containing line met while
    // scanning upward from just above our own area is the smallest one.
    std::vector<int> by_area(n);
    std::iota(by_area.begin(), by_area.end(), 0);
    std::sort(by_area.begin(), by_area.end(), [&](int a, int b) {
        return std::abs(lines_[a].polygon.signed_area()) <
               std::abs(lines_[b].polygon.signed_area());
    });
    std::vector<int> rank(n);
    for (size_t r = 0; r < n; ++r)
        rank[by_area[r]] = int(r);

    for (size_t i = 0; i < n; ++i) {
        const Polygon& poly = lines_[i].polygon;
        const Point probe = poly.vertex(0);
        const Point probe2 = poly.vertex(poly.size() / 2);
        for (size_t r = rank[i] + 1; r < n; ++r) {
            int j = by_area[r];
            const Polygon& cand = lines_[size_t(j)].polygon;
            if (!cand.bbox().overlaps(poly.bbox()))
                continue;
            bool in1 = point_in_polygon(probe, cand);
            bool in2 = point_in_polygon(probe2, cand);
            if (in1 != in2) {
                std::ostringstream os;
                os << "level lines " << lines_[i].id << " and "
                   << lines_[size_t(j)].id << " cross";
                throw GeometryError(os.str());
            }
            if (in1) {
                parent_[i] = j;
                break;
            }
        }
    }

    for (size_t i = 0; i < n; ++i) {
        if (parent_[i] < 0)
            root_children_.push_back(int(i));
        else
            children_[size_t(parent_[i])].push_back(int(i));
    }
    // Deterministic child order: input order already is (level, first vertex).
    preorder_.reserve(n);
    std::vector<int> stack(root_children_.rbegin(), root_children_.rend());
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        preorder_.push_back(i);
        const auto& ch = children_[size_t(i)];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it)
            stack.push_back(*it);
    }
    if (preorder_.size() != n)
        throw GeometryError("inclusion tree has a cycle"); // cannot happen
}

std::vector<std::vector<int>> crown_views(const InclusionTree& tree,
                                          const std::vector<double>& critical) {
    // Index of the open critical gap a level falls in.
    auto gap_of = [&](double level) {
        return size_t(std::upper_bound(critical.begin(), critical.end(), level) -
                      critical.begin());
    };

    const auto& lines = tree.lines();
    std::vector<std::vector<int>> crowns;
    for (size_t i = 0; i < lines.size(); ++i) {
        int p = tree.parent(i);
        // Chain heads: the parent cannot extend the chain downward onto us.
        bool head = p < 0 || tree.children(p).size() != 1 ||
                    gap_of(lines[size_t(p)].level) != gap_of(lines[i].level);
        if (!head)
            continue;
        std::vector<int> chain{int(i)};
        int cur = int(i);
        while (tree.children(cur).size() == 1) {
            int next = tree.children(cur)[0];
            if (gap_of(lines[size_t(next)].level) != gap_of(lines[size_t(cur)].level))
                break;
            chain.push_back(next);
            cur = next;
        }
        crowns.push_back(std::move(chain));
    }
    return crowns;
}

std::vector<FlatRegionView> flat_region_views(const InclusionTree& tree) {
    std::vector<FlatRegionView> views;
    views.reserve(tree.size());
    for (size_t i = 0; i < tree.size(); ++i) {
        FlatRegionView v;
        v.exterior = int(i);
        v.interiors = tree.children(int(i));
        v.level = tree.lines()[i].inner_value;
        views.push_back(std::move(v));
    }
    return views;
}

} // namespace lls
