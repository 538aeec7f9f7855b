#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "colorpart/point_set.hpp"

namespace colorpart::testing {

/// Coordinates on a 1e-4 grid in [0, 1]^d, resampled until in general position.
/// The first `first_color` points (before shuffling) get color 1, the rest color 2.
inline ColoredPointSet random_instance(std::mt19937_64& rng, int total, int first_color, int dimension = 2) {
  std::uniform_int_distribution<int> coord(0, 10000);
  while (true) {
    std::vector<std::vector<Rational>> coords;
    std::vector<int> colors;
    for (int i = 0; i < total; ++i) {
      std::vector<Rational> p;
      for (int k = 0; k < dimension; ++k) p.emplace_back(coord(rng), 10000);
      for (auto& v : p) v.canonicalize();
      coords.push_back(std::move(p));
      colors.push_back(i < first_color ? 1 : 2);
    }
    std::shuffle(colors.begin(), colors.end(), rng);
    ColoredPointSet ps(dimension, std::move(coords), std::move(colors));
    if (check_general_position(ps)) return ps;
  }
}

inline ColoredPointSet planar(std::vector<std::pair<const char*, const char*>> xy, std::vector<int> colors) {
  std::vector<std::vector<Rational>> coords;
  for (auto [x, y] : xy) coords.push_back({parse_rational(x), parse_rational(y)});
  return ColoredPointSet(2, std::move(coords), std::move(colors));
}

}  // namespace colorpart::testing
