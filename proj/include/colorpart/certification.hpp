#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "colorpart/point_set.hpp"
#include "colorpart/rational.hpp"

namespace colorpart {

/// { x : normal . x = offset }. The positive open side is normal . x > offset.
struct Hyperplane {
  std::vector<Rational> normal;
  Rational offset;

  /// Exact sign of normal . x - offset.
  int side(const std::vector<Rational>& x) const;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// Part sizes and per-color counts of an assignment of points to parts 0..n-1.
struct CardinalityLedger {
  std::vector<std::size_t> part_sizes;
  /// color_counts[j][c - 1] = number of points of color c in part j.
  std::vector<std::vector<std::size_t>> color_counts;
  /// Human-readable violations of the floor/ceil rule (empty iff it holds).
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Throws std::invalid_argument if the assignment does not give every point
/// exactly one part in 0..n-1.
CardinalityLedger check_equipartition(const std::vector<int>& assignment, const ColoredPointSet& ps, int n);

/// A hyperplane with every point of plus strictly on its positive side and
/// every point of minus strictly on its negative side, from an exact LP that
/// maximizes the margin. nullopt iff the convex hulls intersect.
/// Throws std::invalid_argument on an empty set or mixed dimensions.
std::optional<Hyperplane> strictly_separate(const std::vector<std::vector<Rational>>& plus,
                                            const std::vector<std::vector<Rational>>& minus);

bool separates(const Hyperplane& h, const std::vector<std::vector<Rational>>& plus,
               const std::vector<std::vector<Rational>>& minus);

struct SeparationWitness {
  int part_a = 0;
  int part_b = 0;
  /// part_a lies on the positive side.
  Hyperplane plane;

  friend bool operator==(const SeparationWitness&, const SeparationWitness&) = default;
};

struct PartitionCertificate {
  std::vector<int> assignment;
  CardinalityLedger ledger;
  std::vector<SeparationWitness> witnesses;
};

struct CertifyResult {
  bool valid = false;
  PartitionCertificate certificate;
  /// Every failing cardinality and every part pair whose hulls meet (parts 1-based).
  std::vector<std::string> violations;
};

/// Checks the floor/ceil rule and strict separation of all part pairs.
CertifyResult certify(const std::vector<int>& assignment, const ColoredPointSet& ps, int n);

constexpr std::size_t kBruteForceCap = 10;

/// Exhaustive search for an assignment that certify accepts, with parts
/// unlabeled. Throws std::invalid_argument when |X| exceeds the cap or n is
/// not in 1..|X|.
std::optional<std::vector<int>> brute_force_partition(const ColoredPointSet& ps, int n,
                                                      std::size_t cap = kBruteForceCap);

}  // namespace colorpart
