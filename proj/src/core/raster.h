#pragma once

#include "flow.h"
#include "image.h"
#include "tree.h"

namespace lls {

/// Surviving line family after evolution, with the hierarchy inherited from
/// the initial tree: collapsed nodes are spliced out and their children
/// re-parented to the nearest surviving ancestor.
struct EvolvedTree {
    std::vector<LevelLine> lines; // evolved polygons, original labels
    std::vector<int> parent;      // -1 = root
    std::vector<int> preorder;    // ancestors first
    int collapsed = 0;            // how many initial lines died
};

/// Splice the evolution results onto the initial tree. Verifies that every
/// surviving child still sits inside its surviving parent (the discrete
/// inclusion principle) and throws GeometryError otherwise.
EvolvedTree splice_evolved(const InclusionTree& initial,
                           const std::vector<EvolvedCurve>& evolved);

/// Identity splice: the initial tree viewed as an evolved one (t = 0).
EvolvedTree as_evolved(const InclusionTree& initial);

/// Paint the family back into an image: starting from the constant
/// background, fill each line's interior with its inner value in
/// root-to-leaf order (even-odd rule, sampled at integer pixel centers;
/// a center exactly on an edge takes the inner value).
ImageGrid rasterize(const EvolvedTree& tree, int width, int height,
                    double background);

/// Even-odd fill of one polygon (exposed for tests).
void fill_polygon(const Polygon& poly, double value, ImageGrid& img);

/// Discrete Lipschitz constant of the painted image: max over parent-child
/// line pairs of |level difference| / min distance. 0 with fewer than two
/// lines.
double lipschitz_estimate(const EvolvedTree& tree);

} // namespace lls
