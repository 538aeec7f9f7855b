#include "colorpart/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace colorpart {

ColoredPointSet::ColoredPointSet(int dimension, std::vector<std::vector<Rational>> coords,
                                 std::vector<int> colors)
    : dimension_(dimension), coords_(std::move(coords)), colors_(std::move(colors)) {
  if (dimension_ < 1) throw std::invalid_argument("dimension must be positive");
  if (coords_.size() != colors_.size()) throw std::invalid_argument("one color per point required");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (static_cast<int>(coords_[i].size()) != dimension_) {
      throw std::invalid_argument("point " + std::to_string(i) + " has " + std::to_string(coords_[i].size()) +
                                  " coordinates, expected " + std::to_string(dimension_));
    }
    if (colors_[i] < 1 || colors_[i] > dimension_) {
      throw std::invalid_argument("point " + std::to_string(i) + " has color " + std::to_string(colors_[i]) +
                                  " outside 1.." + std::to_string(dimension_));
    }
  }
}

std::vector<std::size_t> ColoredPointSet::color_class(int c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (colors_[i] == c) out.push_back(i);
  }
  return out;
}

std::size_t ColoredPointSet::color_count(int c) const {
  return static_cast<std::size_t>(std::count(colors_.begin(), colors_.end(), c));
}

std::vector<double> ColoredPointSet::as_double(std::size_t i) const {
  std::vector<double> out;
  out.reserve(coords_[i].size());
  for (const auto& v : coords_[i]) out.push_back(to_double(v));
  return out;
}

Point2 ColoredPointSet::point2(std::size_t i) const {
  if (dimension_ != 2) throw std::logic_error("planar view of a non-planar point set");
  return {to_double(coords_[i][0]), to_double(coords_[i][1])};
}

ExactPoint2 ColoredPointSet::exact_point2(std::size_t i) const {
  if (dimension_ != 2) throw std::logic_error("planar view of a non-planar point set");
  return {coords_[i][0], coords_[i][1]};
}

namespace {

// Exact rank of the difference vectors p_1 - p_0, ..., p_m - p_0.
bool affinely_independent(const ColoredPointSet& ps, const std::vector<std::size_t>& subset) {
  const int d = ps.dimension();
  const std::size_t rows = subset.size() - 1;
  if (rows == 0) return true;
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(d));
  for (std::size_t r = 0; r < rows; ++r) {
    for (int c = 0; c < d; ++c) m[r][c] = ps.coords(subset[r + 1])[c] - ps.coords(subset[0])[c];
  }
  std::size_t rank = 0;
  for (int col = 0; col < d && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (int c = col; c < d; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank == rows;
}

// Calls visit on every k-subset of {0..n-1} in lexicographic order until it returns false.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n || k == 0) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double distance_to_affine_hull(const std::vector<double>& p, const std::vector<std::vector<double>>& others) {
  std::vector<double> diff(p.size());
  for (std::size_t c = 0; c < p.size(); ++c) diff[c] = p[c] - others[0][c];
  std::vector<std::vector<double>> basis;
  for (std::size_t r = 1; r < others.size(); ++r) {
    std::vector<double> v(p.size());
    for (std::size_t c = 0; c < p.size(); ++c) v[c] = others[r][c] - others[0][c];
    for (const auto& b : basis) {
      double proj = 0;
      for (std::size_t c = 0; c < v.size(); ++c) proj += v[c] * b[c];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= proj * b[c];
    }
    double len = 0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    if (len == 0) continue;
    for (double& x : v) x /= len;
    basis.push_back(std::move(v));
  }
  for (const auto& b : basis) {
    double proj = 0;
    for (std::size_t c = 0; c < diff.size(); ++c) proj += diff[c] * b[c];
    for (std::size_t c = 0; c < diff.size(); ++c) diff[c] -= proj * b[c];
  }
  double len = 0;
  for (double x : diff) len += x * x;
  return std::sqrt(len);
}

}  // namespace

std::optional<std::vector<std::size_t>> find_general_position_violation(const ColoredPointSet& ps) {
  if (ps.size() == 0) throw std::invalid_argument("general position check needs at least one point");
  const std::size_t k = std::min<std::size_t>(ps.size(), static_cast<std::size_t>(ps.dimension()) + 1);
  // Coincident pairs first: they are the more specific failure.
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps.coords(i) == ps.coords(j)) return std::vector<std::size_t>{i, j};
    }
  }
  std::optional<std::vector<std::size_t>> found;
  if (ps.dimension() == 2 && k == 3) {
    std::vector<ExactPoint2> pts;
    for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(ps.exact_point2(i));
    for_each_subset(ps.size(), 3, [&](const std::vector<std::size_t>& s) {
      if (orientation(pts[s[0]], pts[s[1]], pts[s[2]]) == 0) {
        found = s;
        return false;
      }
      return true;
    });
    return found;
  }
  for_each_subset(ps.size(), k, [&](const std::vector<std::size_t>& s) {
    if (!affinely_independent(ps, s)) {
      found = s;
      return false;
    }
    return true;
  });
  return found;
}

bool check_general_position(const ColoredPointSet& ps) { return !find_general_position_violation(ps); }

SafeRadius safe_radius(const ColoredPointSet& ps, double margin) {
  if (!(margin > 0.0 && margin < 1.0)) throw std::invalid_argument("safe radius margin must lie in (0,1)");
  SafeRadius out;
  out.margin = margin;
  if (ps.size() < 2) {
    out.epsilon = 1.0;
    out.bound = std::numeric_limits<double>::infinity();
    return out;
  }

  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(ps.as_double(i));
  const int d = ps.dimension();

  double bound = std::numeric_limits<double>::infinity();
  if (d <= 2) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        bound = std::min(bound, distance_to_affine_hull(pts[i], {pts[j]}) / 2.0);
      }
    }
    if (d == 2) {
      std::vector<Point2> p2;
      for (std::size_t i = 0; i < ps.size(); ++i) p2.push_back(ps.point2(i));
      for_each_subset(p2.size(), 3, [&](const std::vector<std::size_t>& s) {
        bound = std::min(bound, strip_half_width(p2[s[0]], p2[s[1]], p2[s[2]]));
        return true;
      });
    }
  } else {
    for (std::size_t size = 2; size <= static_cast<std::size_t>(d); ++size) {
      for_each_subset(pts.size(), size, [&](const std::vector<std::size_t>& s) {
        for (std::size_t a = 0; a < s.size(); ++a) {
          std::vector<std::vector<double>> others;
          for (std::size_t b = 0; b < s.size(); ++b) {
            if (b != a) others.push_back(pts[s[b]]);
          }
          bound = std::min(bound, distance_to_affine_hull(pts[s[a]], others) / (2.0 * (d + 1)));
        }
        return true;
      });
    }
  }
  out.bound = bound;
  out.epsilon = margin * bound;
  return out;
}

}  // namespace colorpart
