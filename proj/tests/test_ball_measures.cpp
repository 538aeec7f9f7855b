#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "colorpart/ball_measures.hpp"
#include "colorpart/power_diagram.hpp"
#include "support.hpp"

using namespace colorpart;

namespace {

ConvexRegion random_polygon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ExactPoint2> pts;
  for (int i = 0; i < 7; ++i) pts.push_back({to_rational(u(rng)), to_rational(u(rng))});
  const auto hull = convex_hull(pts);
  ConvexRegion r;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a{to_double(hull[i].x), to_double(hull[i].y)};
    const Point2 b{to_double(hull[(i + 1) % hull.size()].x), to_double(hull[(i + 1) % hull.size()].y)};
    const Point2 n{(b - a).y, -(b - a).x};
    r.halfplanes.push_back({n, dot(n, a)});
  }
  return r;
}

double monte_carlo(std::mt19937_64& rng, Point2 c, double eps, const ConvexRegion& region, int samples) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double rad = eps * std::sqrt(u(rng)), ang = 2 * std::numbers::pi * u(rng);
    hits += region.contains({c.x + rad * std::cos(ang), c.y + rad * std::sin(ang)});
  }
  return static_cast<double>(hits) / samples;
}

ConvexRegion halfplane(Point2 n, double offset) {
  ConvexRegion r;
  r.halfplanes.push_back({n, offset});
  return r;
}

}  // namespace

TEST_CASE("closed-form disk mass agrees with Monte Carlo within three standard errors") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.7, 0.7), radius(0.1, 0.9);
  constexpr int kSamples = 200000;
  for (int trial = 0; trial < 30; ++trial) {
    const ConvexRegion region = random_polygon(rng);
    const Point2 c{u(rng), u(rng)};
    const double eps = radius(rng);
    const double p = disk_region_mass(c, eps, region);
    const double se = std::max(std::sqrt(p * (1 - p) / kSamples), 1.0 / kSamples);
    CAPTURE(p);
    CHECK(std::abs(monte_carlo(rng, c, eps, region, kSamples) - p) <= 3 * se);
  }
}

TEST_CASE("disk mass on simple regions") {
  const Point2 c{1.0, 2.0};
  CHECK(disk_region_mass(c, 0.5, ConvexRegion{}) == 1.0);
  CHECK(disk_region_mass(c, 0.5, halfplane({1, 0}, 10.0)) == 1.0);
  CHECK(disk_region_mass(c, 0.5, halfplane({1, 0}, -10.0)) == 0.0);
  CHECK(disk_region_mass(c, 0.5, halfplane({1, 0}, 1.0)) == doctest::Approx(0.5));
  ConvexRegion quadrant = halfplane({1, 0}, 1.0);
  quadrant.halfplanes.push_back({{0, -1}, -2.0});
  CHECK(disk_region_mass(c, 0.5, quadrant) == doctest::Approx(0.25));
  // Segment of height h = 0.5 of a unit disk: (acos(1-h) - (1-h) sqrt(2h - h^2)) / pi.
  const double h = 0.5;
  const double segment = (std::acos(1 - h) - (1 - h) * std::sqrt(2 * h - h * h)) / std::numbers::pi;
  CHECK(disk_region_mass({0, 0}, 1.0, halfplane({0, -1}, -0.5)) == doctest::Approx(segment));
}

TEST_CASE("a triangle strictly inside the disk has mass area / (pi r^2)") {
  ConvexRegion tri;
  const Point2 v[3] = {{-0.2, -0.1}, {0.3, -0.15}, {0.05, 0.35}};
  for (int i = 0; i < 3; ++i) {
    const Point2 a = v[i], b = v[(i + 1) % 3];
    const Point2 n{(b - a).y, -(b - a).x};
    tri.halfplanes.push_back({n, dot(n, a)});
  }
  const double area = 0.5 * std::abs(cross(v[1] - v[0], v[2] - v[0]));
  CHECK(disk_region_mass({0, 0}, 1.0, tri) == doctest::Approx(area / std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("additivity across a cut and monotonicity under intersection") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvexRegion region = random_polygon(rng);
    const Point2 c{0.5 * u(rng), 0.5 * u(rng)};
    const double eps = 0.2 + 0.5 * (u(rng) + 1);
    const Point2 n{u(rng), u(rng)};
    const double off = 0.3 * u(rng);
    ConvexRegion left = region, right = region;
    left.halfplanes.push_back({n, off});
    right.halfplanes.push_back({-1.0 * n, -off});
    const double whole = disk_region_mass(c, eps, region);
    CHECK(disk_region_mass(c, eps, left) + disk_region_mass(c, eps, right) == doctest::Approx(whole).epsilon(1e-12));
    CHECK(disk_region_mass(c, eps, left) <= whole + 1e-15);
  }
}

TEST_CASE("power cells carry every disk completely") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    WeightedSites ws;
    for (int j = 0; j < 2 + trial % 5; ++j) {
      ws.sites.push_back({u(rng), u(rng)});
      ws.weights.push_back(0.05 * u(rng));
    }
    const auto cells = power_cells(ws);
    for (int k = 0; k < 10; ++k) {
      const Point2 c{u(rng), u(rng)};
      const double eps = 0.01 + 0.3 * u(rng);
      double total = 0.0;
      for (const auto& cell : cells) total += disk_region_mass(c, eps, cell);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("family masses and construction") {
  const auto ps = colorpart::testing::planar({{"0", "0"}, {"1", "0"}, {"0", "1"}}, {1, 2, 1});
  const auto family = make_ball_measures(ps, 0.1);
  CHECK(family.colors() == 2);
  CHECK(family.total_mass(1) == 2.0);
  CHECK(family.total_mass(2) == 1.0);
  CHECK(region_mass(family, 1, halfplane({0, 1}, 0.5)) == doctest::Approx(1.0));
  CHECK(region_mass(family, 1, ConvexRegion{}) == 2.0);
  CHECK_THROWS_AS(make_ball_measures(ps, 0.0), std::invalid_argument);
}

TEST_CASE("line density is the derivative of mass in the offset") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    BallMeasureFamily family;
    family.epsilon = 0.3;
    family.centers.resize(1);
    for (int i = 0; i < 5; ++i) family.centers[0].push_back({0.5 * u(rng), 0.5 * u(rng)});
    const double angle = 3.2 * u(rng);
    const Point2 n{std::cos(angle), std::sin(angle)};
    const double s = 0.3 * u(rng);
    const double h = 1e-6;
    const double derivative =
        (region_mass(family, 1, halfplane(n, s + h)) - region_mass(family, 1, halfplane(n, s - h))) / (2 * h);
    const auto piece = boundary_piece(halfplane(n, s), 0);
    REQUIRE(piece);
    CHECK(line_density(family, 1, *piece).mass == doctest::Approx(derivative).epsilon(1e-5));
  }
}
