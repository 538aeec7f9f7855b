#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "colorpart/point_set.hpp"
#include "support.hpp"

using namespace colorpart;
using colorpart::testing::planar;
using colorpart::testing::random_instance;

namespace {

// Homogeneous determinant of three planar points.
bool collinear_oracle(const std::vector<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  const Rational det = a[0] * (b[1] - c[1]) - b[0] * (a[1] - c[1]) + c[0] * (a[1] - b[1]);
  return det == 0;
}

bool general_position_oracle(const ColoredPointSet& ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (ps.coords(i) == ps.coords(j)) return false;
      for (std::size_t k = j + 1; k < ps.size(); ++k) {
        if (collinear_oracle(ps.coords(i), ps.coords(j), ps.coords(k))) return false;
      }
    }
  }
  return true;
}

// Squared distance from p to the line through a and b, exactly.
Rational squared_line_distance(const ExactPoint2& p, const ExactPoint2& a, const ExactPoint2& b) {
  const Rational c = cross(b - a, p - a);
  return c * c / squared_norm(b - a);
}

}  // namespace

TEST_CASE("construction validates colors and coordinate counts") {
  CHECK_THROWS_AS(ColoredPointSet(2, {{Rational(0)}}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(ColoredPointSet(2, {{Rational(0), Rational(0)}}, {3}), std::invalid_argument);
  CHECK_THROWS_AS(ColoredPointSet(2, {{Rational(0), Rational(0)}}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(ColoredPointSet(2, {{Rational(0), Rational(0)}}, {1, 2}), std::invalid_argument);
  const auto ps = planar({{"0", "0"}, {"1", "0"}, {"0", "1"}}, {1, 2, 1});
  CHECK(ps.color_class(1) == std::vector<std::size_t>{0, 2});
  CHECK(ps.color_count(2) == 1);
  CHECK(ps.point2(1).x == 1.0);
}

TEST_CASE("general position agrees with an exhaustive determinant oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> c(0, 4);  // a small grid makes collinear triples common
  int violations = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::vector<Rational>> coords;
    std::vector<int> colors;
    for (int i = 0; i < 3 + trial % 5; ++i) {
      coords.push_back({Rational(c(rng)), Rational(c(rng))});
      colors.push_back(1 + i % 2);
    }
    const ColoredPointSet ps(2, coords, colors);
    const bool expected = general_position_oracle(ps);
    violations += !expected;
    CHECK(check_general_position(ps) == expected);
    if (auto bad = find_general_position_violation(ps)) {
      if (bad->size() == 3) {
        CHECK(collinear_oracle(ps.coords((*bad)[0]), ps.coords((*bad)[1]), ps.coords((*bad)[2])));
      } else {
        REQUIRE(bad->size() == 2);
        CHECK(ps.coords((*bad)[0]) == ps.coords((*bad)[1]));
      }
    }
  }
  CHECK(violations > 50);
}

TEST_CASE("general position in three dimensions flags coplanar quadruples") {
  auto make = [](std::vector<std::vector<int>> pts) {
    std::vector<std::vector<Rational>> coords;
    std::vector<int> colors;
    for (auto& p : pts) {
      coords.push_back({Rational(p[0]), Rational(p[1]), Rational(p[2])});
      colors.push_back(1);
    }
    return ColoredPointSet(3, coords, colors);
  };
  CHECK(check_general_position(make({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}})));
  CHECK_FALSE(check_general_position(make({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}})));
  CHECK_FALSE(check_general_position(make({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}})));
}

TEST_CASE("safe radius: no shared point, no line through three balls") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ps = random_instance(rng, 4 + trial % 12, 2);
    const SafeRadius sr = safe_radius(ps);
    REQUIRE(sr.epsilon > 0.0);
    CHECK(sr.epsilon < sr.bound);
    const Rational eps = to_rational(sr.epsilon);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        // Disjoint closed balls: |p - q| > 2 eps.
        CHECK(squared_norm(ps.exact_point2(i) - ps.exact_point2(j)) > 4 * eps * eps);
        for (std::size_t k = j + 1; k < ps.size(); ++k) {
          // Some line meets all three balls iff the triangle's smallest altitude is at most 2 eps;
          // the smallest altitude is the one onto the longest side.
          const ExactPoint2 p[3] = {ps.exact_point2(i), ps.exact_point2(j), ps.exact_point2(k)};
          Rational smallest = squared_line_distance(p[0], p[1], p[2]);
          smallest = std::min(smallest, Rational(squared_line_distance(p[1], p[2], p[0])));
          smallest = std::min(smallest, Rational(squared_line_distance(p[2], p[0], p[1])));
          CHECK(smallest > 4 * eps * eps);
        }
      }
    }
  }
}

TEST_CASE("safe radius edge cases") {
  CHECK(safe_radius(planar({{"0", "0"}}, {1})).epsilon == 1.0);
  const auto two = planar({{"0", "0"}, {"4", "0"}}, {1, 2});
  CHECK(safe_radius(two).epsilon == doctest::Approx(0.9 * 2.0));
  CHECK(safe_radius(two, 0.5).epsilon == doctest::Approx(1.0));
  CHECK_THROWS_AS(safe_radius(two, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(safe_radius(planar({{"0", "0"}, {"1", "1"}, {"2", "2"}}, {1, 1, 2})), std::invalid_argument);
}
