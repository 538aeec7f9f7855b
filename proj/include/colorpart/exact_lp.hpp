#pragma once

#include <optional>
#include <vector>

#include "colorpart/rational.hpp"

namespace colorpart {

struct LpSolution {
  std::vector<Rational> x;
  Rational objective;
};

/// maximize c.x subject to A x <= b, x >= 0, for b >= 0 (so the origin is
/// feasible). Dense primal simplex in exact arithmetic with Bland's rule.
/// Returns nullopt if the objective is unbounded.
std::optional<LpSolution> maximize(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                   const std::vector<Rational>& c);

}  // namespace colorpart
