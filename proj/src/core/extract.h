#pragma once

#include "geometry.h"
#include "image.h"

#include <vector>

namespace lls {

/// One Jordan level line of the bilinear surface.
///
/// Traversal keeps the upper level set {u > level} on the left, so lines
/// around peaks (interior above the level) come out clockwise under the
/// shoelace sign convention and lines around valleys counterclockwise.
struct LevelLine {
    Polygon polygon;
    double level = 0.0;         // geometric level (after any nudge)
    double nominal_level = 0.0; // quantization slot the level came from
    bool upper = false;         // interior is the upper set
    double inner_value = 0.0;   // value painted inside at reconstruction
    int id = -1;

    bool ccw() const { return polygon.signed_area() > 0; }
};

/// Extraction levels {offset + k q} inside the open value range, with any
/// level within 1e-6 of a critical level (or of a raw sample value) pushed up
/// by 1e-6 until clear. Returned levels are all non-critical.
std::vector<double> quantized_levels(const ImageGrid& g, double q, double offset);

/// Same, against a precomputed critical set.
std::vector<double> quantized_levels(const ImageGrid& g, double q, double offset,
                                     const std::vector<double>& critical);

/// All connected components of {u = level} as simple closed polygons.
///
/// Edge crossings are placed by exact linear inversion; inside each dual
/// pixel the hyperbola arc is sampled so consecutive vertices are at most
/// delta apart, splitting at the hyperbola vertex where the branch bends
/// fastest. Dual pixels crossed four times are disambiguated by comparing
/// the level with the saddle level, which is the topologically exact rule
/// for bilinear surfaces. The level must not be critical and the level set
/// must not touch the domain boundary (pad the image first).
std::vector<LevelLine> extract_level_lines(const ImageGrid& g, double level,
                                           double delta);

/// Per-level extraction over a whole level family, optionally splitting the
/// levels over worker threads. Output is sorted by (level, first vertex) and
/// ids are assigned in that order; nominal levels are taken from `nominal`
/// when given (parallel to `levels`).
std::vector<LevelLine> extract_family(const ImageGrid& g,
                                      const std::vector<double>& levels,
                                      double delta, int threads = 1,
                                      const std::vector<double>* nominal = nullptr);

/// Paint values: nominal level +/- half the gap to the neighboring level
/// (q/2 for a uniform family). `levels` must be the sorted nominal family
/// the lines were extracted at.
void assign_inner_values(std::vector<LevelLine>& lines,
                         const std::vector<double>& levels, double q);

} // namespace lls
