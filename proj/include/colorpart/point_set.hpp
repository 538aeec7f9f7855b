#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "colorpart/geometry.hpp"
#include "colorpart/rational.hpp"

namespace colorpart {

/// Points in R^d, each carrying a color label in {1..d}. Coordinates are
/// exact; double views are derived for the numerical parts of the pipeline.
class ColoredPointSet {
 public:
  /// Throws std::invalid_argument on dimension mismatch or out-of-range color.
  ColoredPointSet(int dimension, std::vector<std::vector<Rational>> coords, std::vector<int> colors);

  int dimension() const { return dimension_; }
  std::size_t size() const { return coords_.size(); }
  int color(std::size_t i) const { return colors_[i]; }
  const std::vector<int>& colors() const { return colors_; }
  const std::vector<Rational>& coords(std::size_t i) const { return coords_[i]; }

  /// Indices of the points of color c (1-based color).
  std::vector<std::size_t> color_class(int c) const;
  std::size_t color_count(int c) const;

  std::vector<double> as_double(std::size_t i) const;
  /// Planar views; require dimension() == 2.
  Point2 point2(std::size_t i) const;
  ExactPoint2 exact_point2(std::size_t i) const;

 private:
  int dimension_;
  std::vector<std::vector<Rational>> coords_;
  std::vector<int> colors_;
};

/// First subset of at most d+1 points that is affinely dependent, if any.
std::optional<std::vector<std::size_t>> find_general_position_violation(const ColoredPointSet& ps);

/// True iff every subset of at most d+1 points is affinely independent.
bool check_general_position(const ColoredPointSet& ps);

struct SafeRadius {
  double epsilon = 1.0;
  double margin = 0.9;
  /// The geometric bound that epsilon sits strictly below (infinity if vacuous).
  double bound = 0.0;
};

constexpr double kDefaultSafeMargin = 0.9;

/// Ball radius such that no point lies in two balls and, in the plane, no
/// line meets three balls. For d >= 3 a conservative affine-hull bound is
/// used instead of exact flat fitting.
SafeRadius safe_radius(const ColoredPointSet& ps, double margin = kDefaultSafeMargin);

}  // namespace colorpart
