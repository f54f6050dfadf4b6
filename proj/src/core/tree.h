#pragma once

#include "extract.h"

#include <vector>

namespace lls {

/// Nesting hierarchy of a disjoint level-line family (the discrete
/// topographic map). Node i is line i; the virtual root stands for the whole
/// domain with inner value 0. The parent of a line is the smallest-area line
/// strictly containing it.
class InclusionTree {
public:
    InclusionTree() = default;
    explicit InclusionTree(std::vector<LevelLine> lines);

    const std::vector<LevelLine>& lines() const { return lines_; }
    std::vector<LevelLine>& lines() { return lines_; }
    size_t size() const { return lines_.size(); }

    /// Parent line index, -1 for children of the root.
    int parent(size_t i) const { return parent_[i]; }
    const std::vector<int>& children(int i) const {
        return i < 0 ? root_children_ : children_[size_t(i)];
    }
    /// Indices in ancestors-before-descendants order.
    const std::vector<int>& preorder() const { return preorder_; }

private:
    std::vector<LevelLine> lines_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> root_children_;
    std::vector<int> preorder_;
};

/// Maximal single-child chains whose levels stay strictly between two
/// consecutive critical levels: the discrete crowns. Each chain is ordered
/// from the outermost line inwards; levels along it are monotone.
std::vector<std::vector<int>> crown_views(const InclusionTree& tree,
                                          const std::vector<double>& critical);

/// The constant region between a line and its children:
/// Int(exterior) minus the interiors of the interiors.
struct FlatRegionView {
    int exterior = -1;
    std::vector<int> interiors;
    double level = 0.0; // the constant value on the region
};
std::vector<FlatRegionView> flat_region_views(const InclusionTree& tree);

} // namespace lls
