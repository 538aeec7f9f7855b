#pragma once

#include <cstddef>
#include <vector>

#include "colorpart/geometry.hpp"
#include "colorpart/point_set.hpp"

namespace colorpart {

/// Per-color measures in the plane: every center carries a uniformly
/// distributed unit mass on its closed disk of radius epsilon.
struct BallMeasureFamily {
  double epsilon = 1.0;
  /// centers[c - 1] holds the points of color c.
  std::vector<std::vector<Point2>> centers;

  int colors() const { return static_cast<int>(centers.size()); }
  const std::vector<Point2>& color_centers(int color) const { return centers.at(color - 1); }
  double total_mass(int color) const { return static_cast<double>(color_centers(color).size()); }
  BallMeasureFamily with_radius(double radius) const { return {radius, centers}; }
};

/// Requires a planar point set.
BallMeasureFamily make_ball_measures(const ColoredPointSet& ps, double epsilon);

/// Fraction of the disk B_eps(center) that lies in C, in closed form.
double disk_region_mass(const Point2& center, double epsilon, const ConvexRegion& region);

/// mu_color(C): sum of disk_region_mass over the centers of that color.
double region_mass(const BallMeasureFamily& family, int color, const ConvexRegion& region);

/// Zeroth and first moments of the measure density along a line piece:
/// mass = integral of rho ds, moment = integral of rho * x ds.
struct LineDensity {
  double mass = 0.0;
  Point2 moment{};
};

LineDensity line_density(const BallMeasureFamily& family, int color, const BoundaryPiece<double>& piece);

}  // namespace colorpart
