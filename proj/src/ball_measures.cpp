#include "colorpart/ball_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace colorpart {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed area of (unit disk) ∩ (triangle O, a, b).
double disk_triangle_area(const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double qa = squared_norm(ab);
  if (qa == 0.0) return 0.0;
  const double qb = 2.0 * dot(a, ab);
  const double qc = squared_norm(a) - 1.0;
  double cuts[4] = {0.0, 0.0, 0.0, 1.0};
  int count = 1;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    const double t1 = (-qb - root) / (2.0 * qa);
    const double t2 = (-qb + root) / (2.0 * qa);
    if (t1 > 0.0 && t1 < 1.0) cuts[count++] = t1;
    if (t2 > 0.0 && t2 < 1.0) cuts[count++] = t2;
  }
  cuts[count++] = 1.0;

  double area = 0.0;
  for (int i = 0; i + 1 < count; ++i) {
    const Point2 p = a + cuts[i] * ab;
    const Point2 q = a + cuts[i + 1] * ab;
    const Point2 mid = a + (0.5 * (cuts[i] + cuts[i + 1])) * ab;
    if (squared_norm(mid) < 1.0) {
      area += 0.5 * cross(p, q);
    } else {
      area += 0.5 * std::atan2(cross(p, q), dot(p, q));
    }
  }
  return area;
}

// Area of {u : |u| <= 1, n.u <= s} for a unit normal n.
double disk_halfplane_area(double s) {
  if (s >= 1.0) return kPi;
  if (s <= -1.0) return 0.0;
  return kPi - (std::acos(s) - s * std::sqrt(1.0 - s * s));
}

}  // namespace

BallMeasureFamily make_ball_measures(const ColoredPointSet& ps, double epsilon) {
  if (ps.dimension() != 2) throw std::invalid_argument("ball measures are implemented for the plane only");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ball radius must be positive");
  BallMeasureFamily family;
  family.epsilon = epsilon;
  family.centers.resize(2);
  for (std::size_t i = 0; i < ps.size(); ++i) family.centers[ps.color(i) - 1].push_back(ps.point2(i));
  return family;
}

double disk_region_mass(const Point2& center, double epsilon, const ConvexRegion& region) {
  // Work in the frame of the unit disk; only half-planes cutting the disk matter.
  std::vector<HalfPlane<double>> active;
  for (const auto& h : region.halfplanes) {
    const double len = norm(h.normal);
    if (len == 0.0) {
      if (h.offset < 0.0) return 0.0;
      continue;
    }
    const double s = (h.offset - dot(h.normal, center)) / (epsilon * len);
    if (s >= 1.0) continue;
    if (s <= -1.0) return 0.0;
    active.push_back({{h.normal.x / len, h.normal.y / len}, s});
  }
  if (active.empty()) return 1.0;
  if (active.size() == 1) return disk_halfplane_area(active[0].offset) / kPi;

  // A square strictly containing the disk, so that no edge is tangent to it.
  std::vector<Point2> poly{{-2.0, -2.0}, {2.0, -2.0}, {2.0, 2.0}, {-2.0, 2.0}};
  for (const auto& h : active) {
    poly = clip_polygon(poly, h);
    if (poly.size() < 3) return 0.0;
  }
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) area += disk_triangle_area(poly[i], poly[(i + 1) % poly.size()]);
  return std::clamp(area / kPi, 0.0, 1.0);
}

double region_mass(const BallMeasureFamily& family, int color, const ConvexRegion& region) {
  double total = 0.0;
  for (const auto& c : family.color_centers(color)) total += disk_region_mass(c, family.epsilon, region);
  return total;
}

LineDensity line_density(const BallMeasureFamily& family, int color, const BoundaryPiece<double>& piece) {
  LineDensity out;
  const double r = family.epsilon;
  const double density = 1.0 / (kPi * r * r);
  const double qa = squared_norm(piece.direction);
  const double speed = std::sqrt(qa);
  for (const auto& c : family.color_centers(color)) {
    const Point2 rel = piece.origin - c;
    const double qb = 2.0 * dot(piece.direction, rel);
    const double qc = squared_norm(rel) - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) continue;
    const double root = std::sqrt(disc);
    double t1 = (-qb - root) / (2.0 * qa);
    double t2 = (-qb + root) / (2.0 * qa);
    if (piece.lower) t1 = std::max(t1, *piece.lower);
    if (piece.upper) t2 = std::min(t2, *piece.upper);
    if (t2 <= t1) continue;
    const double weight = (t2 - t1) * speed * density;
    const Point2 mid = piece.origin + (0.5 * (t1 + t2)) * piece.direction;
    out.mass += weight;
    out.moment = out.moment + weight * mid;
  }
  return out;
}

}  // namespace colorpart
