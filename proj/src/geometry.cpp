#include "colorpart/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colorpart {

double norm(const Point2& a) { return std::hypot(a.x, a.y); }

ExactRegion to_exact(const ConvexRegion& region) {
  ExactRegion out;
  out.clip_box = region.clip_box;
  out.halfplanes.reserve(region.halfplanes.size());
  for (const auto& h : region.halfplanes) {
    out.halfplanes.push_back({{to_rational(h.normal.x), to_rational(h.normal.y)}, to_rational(h.offset)});
  }
  return out;
}

template <class T>
std::optional<BoundaryPiece<T>> boundary_piece(const ConvexRegionT<T>& region, std::size_t k) {
  const HalfPlane<T>& line = region.halfplanes.at(k);
  const T len2 = squared_norm(line.normal);
  if (len2 == T(0)) return std::nullopt;

  BoundaryPiece<T> piece;
  piece.origin = T(line.offset / len2) * line.normal;
  piece.direction = {-line.normal.y, line.normal.x};

  for (std::size_t m = 0; m < region.halfplanes.size(); ++m) {
    if (m == k) continue;
    const HalfPlane<T>& h = region.halfplanes[m];
    const T slope = dot(h.normal, piece.direction);
    const T room = h.offset - dot(h.normal, piece.origin);
    if (slope == T(0)) {
      if (room < T(0)) return std::nullopt;
      continue;
    }
    T bound = room / slope;
    if (slope > T(0)) {
      if (!piece.upper || bound < *piece.upper) piece.upper = bound;
    } else {
      if (!piece.lower || bound > *piece.lower) piece.lower = bound;
    }
  }
  if (piece.lower && piece.upper && *piece.lower > *piece.upper) return std::nullopt;
  return piece;
}

template <class T>
std::optional<T> squared_distance_to_region(const Vec2<T>& p, const ConvexRegionT<T>& region) {
  for (const auto& h : region.halfplanes) {
    if (squared_norm(h.normal) == T(0) && h.offset < T(0)) return std::nullopt;
  }
  if (region.contains(p)) return T(0);

  std::optional<T> best;
  for (std::size_t k = 0; k < region.halfplanes.size(); ++k) {
    auto piece = boundary_piece(region, k);
    if (!piece) continue;
    T t = dot(p - piece->origin, piece->direction) / squared_norm(piece->direction);
    if (piece->lower && t < *piece->lower) t = *piece->lower;
    if (piece->upper && t > *piece->upper) t = *piece->upper;
    const Vec2<T> foot = piece->origin + t * piece->direction;
    T d2 = squared_norm(p - foot);
    if (!best || d2 < *best) best = d2;
  }
  return best;
}

template std::optional<BoundaryPiece<double>> boundary_piece(const ConvexRegion&, std::size_t);
template std::optional<BoundaryPiece<Rational>> boundary_piece(const ExactRegion&, std::size_t);
template std::optional<double> squared_distance_to_region(const Point2&, const ConvexRegion&);
template std::optional<Rational> squared_distance_to_region(const ExactPoint2&, const ExactRegion&);

double point_to_region_distance(const Point2& x, const ConvexRegion& region) {
  auto d2 = squared_distance_to_region(x, region);
  if (!d2) throw std::invalid_argument("distance to an empty region");
  return std::sqrt(*d2);
}

bool ball_meets_region(const ExactPoint2& center, const Rational& epsilon,
                       const ExactRegion& region) {
  auto d2 = squared_distance_to_region(center, region);
  return d2 && *d2 <= epsilon * epsilon;
}

std::vector<Point2> clip_polygon(std::span<const Point2> polygon, const HalfPlane<double>& h) {
  std::vector<Point2> out;
  const std::size_t m = polygon.size();
  out.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % m];
    const double fa = dot(h.normal, a) - h.offset;
    const double fb = dot(h.normal, b) - h.offset;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

std::vector<Point2> region_polygon(const ConvexRegion& region, const Box& box) {
  std::vector<Point2> poly{{box.lo.x, box.lo.y}, {box.hi.x, box.lo.y}, {box.hi.x, box.hi.y}, {box.lo.x, box.hi.y}};
  for (const auto& h : region.halfplanes) {
    poly = clip_polygon(poly, h);
    if (poly.empty()) break;
  }
  return poly;
}

double polygon_area(std::span<const Point2> polygon) {
  double twice = 0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return 0.5 * twice;
}

double strip_half_width(const Point2& p, const Point2& q, const Point2& r) {
  const double twice_area = std::abs(cross(q - p, r - p));
  if (twice_area == 0.0) throw std::invalid_argument("strip_half_width: collinear points (general position violated)");
  const double longest = std::max({norm(q - p), norm(r - q), norm(p - r)});
  // the minimal width of a triangle is its smallest altitude
  return twice_area / longest / 2.0;
}

int orientation(const ExactPoint2& a, const ExactPoint2& b, const ExactPoint2& c) {
  return sgn(Rational(cross(b - a, c - a)));
}

std::vector<ExactPoint2> convex_hull(std::vector<ExactPoint2> points) {
  std::sort(points.begin(), points.end(), [](const ExactPoint2& a, const ExactPoint2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;

  std::vector<ExactPoint2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace colorpart
