#include "colorpart/certification.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "colorpart/exact_lp.hpp"

namespace colorpart {

namespace {

std::string part_name(int j) { return "part " + std::to_string(j + 1); }

std::vector<std::vector<Rational>> members(const ColoredPointSet& ps, const std::vector<int>& assignment, int part) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t x = 0; x < ps.size(); ++x) {
    if (assignment[x] == part) out.push_back(ps.coords(x));
  }
  return out;
}

}  // namespace

int Hyperplane::side(const std::vector<Rational>& x) const {
  Rational s = -offset;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
  return sgn(s);
}

CardinalityLedger check_equipartition(const std::vector<int>& assignment, const ColoredPointSet& ps, int n) {
  if (n < 1) throw std::invalid_argument("the number of parts must be positive");
  if (assignment.size() != ps.size()) {
    throw std::invalid_argument("assignment covers " + std::to_string(assignment.size()) + " points, expected " +
                                std::to_string(ps.size()));
  }
  const int d = ps.dimension();
  CardinalityLedger ledger;
  ledger.part_sizes.assign(n, 0);
  ledger.color_counts.assign(n, std::vector<std::size_t>(d, 0));
  for (std::size_t x = 0; x < assignment.size(); ++x) {
    const int j = assignment[x];
    if (j < 0 || j >= n) throw std::invalid_argument("point " + std::to_string(x) + " has no part in range");
    ++ledger.part_sizes[j];
    ++ledger.color_counts[j][ps.color(x) - 1];
  }

  auto within = [&](std::size_t value, std::size_t total) {
    const std::size_t lo = total / n, hi = (total + n - 1) / n;
    return value >= lo && value <= hi;
  };
  auto expected = [&](std::size_t total) {
    const std::size_t lo = total / n, hi = (total + n - 1) / n;
    return lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi);
  };
  for (int j = 0; j < n; ++j) {
    if (!within(ledger.part_sizes[j], ps.size())) {
      ledger.violations.push_back(part_name(j) + " has " + std::to_string(ledger.part_sizes[j]) + " points, expected " +
                                  expected(ps.size()));
    }
    for (int c = 1; c <= d; ++c) {
      const std::size_t count = ledger.color_counts[j][c - 1];
      if (!within(count, ps.color_count(c))) {
        ledger.violations.push_back(part_name(j) + " has " + std::to_string(count) + " points of color " +
                                    std::to_string(c) + ", expected " + expected(ps.color_count(c)));
      }
    }
  }
  return ledger;
}

std::optional<Hyperplane> strictly_separate(const std::vector<std::vector<Rational>>& plus,
                                            const std::vector<std::vector<Rational>>& minus) {
  if (plus.empty() || minus.empty()) throw std::invalid_argument("both sets must be nonempty");
  const std::size_t d = plus.front().size();
  for (const auto* set : {&plus, &minus}) {
    for (const auto& p : *set) {
      if (p.size() != d) throw std::invalid_argument("points of mixed dimension");
    }
  }

  // Variables: w+ (d), w- (d), b+, b-, delta. Maximize delta subject to
  // w.p >= b + delta on plus, w.q <= b - delta on minus, |w_i| <= 1, delta <= 1.
  const std::size_t nv = 2 * d + 3;
  const std::size_t bp = 2 * d, bm = 2 * d + 1, delta = 2 * d + 2;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  auto point_row = [&](const std::vector<Rational>& p, int sign) {
    std::vector<Rational> row(nv);
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = -sign * p[i];
      row[d + i] = sign * p[i];
    }
    row[bp] = sign;
    row[bm] = -sign;
    row[delta] = 1;
    a.push_back(std::move(row));
    rhs.emplace_back(0);
  };
  for (const auto& p : plus) point_row(p, 1);
  for (const auto& q : minus) point_row(q, -1);
  for (std::size_t k = 0; k < 2 * d; ++k) {
    std::vector<Rational> row(nv);
    row[k] = 1;
    a.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  {
    std::vector<Rational> row(nv);
    row[delta] = 1;
    a.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  std::vector<Rational> c(nv);
  c[delta] = 1;

  const auto sol = maximize(a, rhs, c);
  if (!sol || sol->objective <= 0) return std::nullopt;
  Hyperplane h;
  h.normal.resize(d);
  for (std::size_t i = 0; i < d; ++i) h.normal[i] = sol->x[i] - sol->x[d + i];
  h.offset = sol->x[bp] - sol->x[bm];
  if (!separates(h, plus, minus)) throw std::logic_error("separation LP returned a non-separating hyperplane");
  return h;
}

bool separates(const Hyperplane& h, const std::vector<std::vector<Rational>>& plus,
               const std::vector<std::vector<Rational>>& minus) {
  for (const auto& p : plus) {
    if (h.side(p) <= 0) return false;
  }
  for (const auto& q : minus) {
    if (h.side(q) >= 0) return false;
  }
  return true;
}

CertifyResult certify(const std::vector<int>& assignment, const ColoredPointSet& ps, int n) {
  CertifyResult result;
  result.certificate.assignment = assignment;
  result.certificate.ledger = check_equipartition(assignment, ps, n);
  result.violations = result.certificate.ledger.violations;

  std::vector<std::vector<std::vector<Rational>>> parts(n);
  for (int j = 0; j < n; ++j) parts[j] = members(ps, assignment, j);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (parts[j].empty() || parts[k].empty()) continue;
      if (auto h = strictly_separate(parts[j], parts[k])) {
        result.certificate.witnesses.push_back({j, k, std::move(*h)});
      } else {
        result.violations.push_back("parts " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                    " have intersecting convex hulls");
      }
    }
  }
  result.valid = result.violations.empty();
  return result;
}

namespace {

class BruteForce {
 public:
  BruteForce(const ColoredPointSet& ps, int n) : ps_(ps), n_(n), labels_(ps.size(), -1) {
    size_cap_ = (ps.size() + n - 1) / n;
    for (int c = 1; c <= ps.dimension(); ++c) color_cap_.push_back((ps.color_count(c) + n - 1) / n);
    sizes_.assign(n, 0);
    colors_.assign(n, std::vector<std::size_t>(ps.dimension(), 0));
  }

  std::optional<std::vector<int>> run() {
    if (search(0, 0)) return labels_;
    return std::nullopt;
  }

 private:
  // Restricted growth: point x may open part `used` only if all earlier parts are open.
  bool search(std::size_t x, int used) {
    if (x == ps_.size()) return used == n_ && accept();
    if (static_cast<int>(ps_.size() - x) < n_ - used) return false;
    const int c = ps_.color(x) - 1;
    for (int j = 0; j <= std::min(used, n_ - 1); ++j) {
      if (sizes_[j] == size_cap_ || colors_[j][c] == color_cap_[c]) continue;
      labels_[x] = j;
      ++sizes_[j];
      ++colors_[j][c];
      const bool found = search(x + 1, std::max(used, j + 1));
      --sizes_[j];
      --colors_[j][c];
      if (found) return true;
    }
    labels_[x] = -1;
    return false;
  }

  bool accept() {
    if (!check_equipartition(labels_, ps_, n_).ok()) return false;
    std::vector<std::uint64_t> mask(n_, 0);
    for (std::size_t x = 0; x < labels_.size(); ++x) mask[labels_[x]] |= std::uint64_t{1} << x;
    for (int j = 0; j < n_; ++j) {
      for (int k = j + 1; k < n_; ++k) {
        if (!separable(mask[j], mask[k])) return false;
      }
    }
    return true;
  }

  bool separable(std::uint64_t a, std::uint64_t b) {
    const auto key = std::minmax(a, b);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto points = [&](std::uint64_t m) {
      std::vector<std::vector<Rational>> out;
      for (std::size_t x = 0; x < ps_.size(); ++x) {
        if (m >> x & 1) out.push_back(ps_.coords(x));
      }
      return out;
    };
    const bool ok = strictly_separate(points(key.first), points(key.second)).has_value();
    cache_.emplace(key, ok);
    return ok;
  }

  const ColoredPointSet& ps_;
  int n_;
  std::vector<int> labels_;
  std::size_t size_cap_ = 0;
  std::vector<std::size_t> color_cap_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::size_t>> colors_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> cache_;
};

}  // namespace

std::optional<std::vector<int>> brute_force_partition(const ColoredPointSet& ps, int n, std::size_t cap) {
  if (ps.size() > cap) {
    throw std::invalid_argument("brute force is capped at " + std::to_string(cap) + " points, got " +
                                std::to_string(ps.size()));
  }
  if (cap > 64) throw std::invalid_argument("brute force cap cannot exceed 64");
  if (n < 1 || static_cast<std::size_t>(n) > ps.size()) {
    throw std::invalid_argument("the number of parts must lie in 1.." + std::to_string(ps.size()));
  }
  return BruteForce(ps, n).run();
}

}  // namespace colorpart
