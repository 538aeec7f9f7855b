#pragma once

#include <string>
#include <vector>

#include "colorpart/geometry.hpp"
#include "colorpart/io.hpp"
#include "colorpart/point_set.hpp"

namespace colorpart {

struct PlotOptions {
  bool regions = true;
  double pixel_size = 640.0;
};

/// Vertices of the convex hull of each part, in the order they are drawn.
std::vector<std::vector<ExactPoint2>> part_hulls(const ColoredPointSet& ps, const std::vector<int>& assignment, int n);

/// An SVG drawing in data coordinates (y up): power regions clipped to a
/// padded bounding box, part hulls as <polygon class="hull" data-part="k">,
/// epsilon circles and the points colored by class.
/// Throws InputError unless the instance is planar.
std::string render_svg(const ColoredPointSet& ps, const ResultFile& result, const PlotOptions& options = {});

}  // namespace colorpart
