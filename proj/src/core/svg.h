#pragma once

#include "raster.h"

#include <string>

namespace lls {

/// One SVG path per level line, stroke colored by level over the family's
/// level range.
void write_svg_lines(const std::string& path, const std::vector<LevelLine>& lines,
                     double width, double height);

/// Per-vertex curvature rendered as colored segments along each line
/// (diverging blue-white-red), with a scale bar legend.
void write_svg_curvature(const std::string& path,
                         const std::vector<LevelLine>& lines, double width,
                         double height);

/// Tree structure as JSON: per line id, level, parent id, area, vertex
/// count, and optionally the vertices themselves.
void write_tree_json(const std::string& path, const EvolvedTree& tree,
                     bool with_vertices);

} // namespace lls
