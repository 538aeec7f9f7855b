#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "colorpart/rational.hpp"

namespace colorpart {

template <class T>
struct Vec2 {
  T x{};
  T y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const T& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

using Point2 = Vec2<double>;
using ExactPoint2 = Vec2<Rational>;

template <class T>
T dot(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class T>
T cross(const Vec2<T>& a, const Vec2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class T>
T squared_norm(const Vec2<T>& a) {
  return dot(a, a);
}

double norm(const Point2& a);

/// The closed half-plane { x : normal . x <= offset }.
template <class T>
struct HalfPlane {
  Vec2<T> normal;
  T offset{};

  bool contains(const Vec2<T>& p) const { return dot(normal, p) <= offset; }
};

/// Axis-aligned box, used to clip unbounded regions for rendering and area.
struct Box {
  Point2 lo;
  Point2 hi;
};

/// Convex region of the plane, the intersection of its half-planes (the
/// whole plane when the list is empty). May be unbounded.
template <class T>
struct ConvexRegionT {
  std::vector<HalfPlane<T>> halfplanes;
  std::optional<Box> clip_box;

  bool contains(const Vec2<T>& p) const {
    for (const auto& h : halfplanes) {
      if (!h.contains(p)) return false;
    }
    return true;
  }
};

using ConvexRegion = ConvexRegionT<double>;
using ExactRegion = ConvexRegionT<Rational>;

ExactRegion to_exact(const ConvexRegion& region);

/// The part of the boundary line of halfplanes[k] that lies in the region:
/// origin + t * direction for t in [lower, upper], either end possibly open.
template <class T>
struct BoundaryPiece {
  Vec2<T> origin;
  Vec2<T> direction;
  std::optional<T> lower;
  std::optional<T> upper;
};

/// Returns nullopt when the piece is empty.
template <class T>
std::optional<BoundaryPiece<T>> boundary_piece(const ConvexRegionT<T>& region, std::size_t k);

/// Squared Euclidean distance from p to the region; 0 iff p is inside.
/// nullopt iff the region is empty.
template <class T>
std::optional<T> squared_distance_to_region(const Vec2<T>& p, const ConvexRegionT<T>& region);

/// Euclidean distance from x to C. Throws std::invalid_argument if C is empty.
double point_to_region_distance(const Point2& x, const ConvexRegion& region);

/// Exact closed-ball incidence test: B_eps(x) meets the region.
bool ball_meets_region(const ExactPoint2& center, const Rational& epsilon,
                       const ExactRegion& region);

/// Sutherland-Hodgman clip of a convex polygon (counter-clockwise) by a half-plane.
std::vector<Point2> clip_polygon(std::span<const Point2> polygon, const HalfPlane<double>& h);

/// Region intersected with a box, as a counter-clockwise polygon (possibly empty).
std::vector<Point2> region_polygon(const ConvexRegion& region, const Box& box);

double polygon_area(std::span<const Point2> polygon);

/// Half of the minimal width of the triangle pqr, i.e. min over lines L of
/// the max distance from p, q, r to L. Throws std::invalid_argument when the
/// points are collinear.
double strip_half_width(const Point2& p, const Point2& q, const Point2& r);

/// Exact orientation sign of (b - a) x (c - a).
int orientation(const ExactPoint2& a, const ExactPoint2& b, const ExactPoint2& c);

/// Convex hull (counter-clockwise, no collinear vertices) by Andrew's monotone chain.
std::vector<ExactPoint2> convex_hull(std::vector<ExactPoint2> points);

}  // namespace colorpart
