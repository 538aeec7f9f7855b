#include "colorpart/exact_lp.hpp"

#include <stdexcept>

namespace colorpart {

std::optional<LpSolution> maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                   const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t nv = c.size();
  if (b.size() != m) throw std::invalid_argument("one right-hand side per constraint required");
  for (const auto& row : a) {
    if (row.size() != nv) throw std::invalid_argument("constraint width does not match the objective");
  }
  for (const auto& v : b) {
    if (v < 0) throw std::invalid_argument("right-hand sides must be nonnegative");
  }

  // Columns: nv structural variables, then m slacks; last column is the rhs.
  const std::size_t width = nv + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = a[i][j];
    t[i][nv + i] = 1;
    t[i][width] = b[i];
    basis[i] = nv + i;
  }
  std::vector<Rational> z(width + 1);
  for (std::size_t j = 0; j < nv; ++j) z[j] = -c[j];

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (z[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][width] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;

    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j <= width; ++j) {
        if (t[leave][j] != 0) t[i][j] -= factor * t[leave][j];
      }
    }
    if (z[enter] != 0) {
      const Rational factor = z[enter];
      for (std::size_t j = 0; j <= width; ++j) {
        if (t[leave][j] != 0) z[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.x.assign(nv, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) sol.x[basis[i]] = t[i][width];
  }
  sol.objective = z[width];
  return sol;
}

}  // namespace colorpart
