#include "colorpart/equipartition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace colorpart {

double ContinuousPartition::max_deviation() const {
  double m = 0.0;
  for (const auto& row : deviation) {
    for (double v : row) m = std::max(m, std::abs(v));
  }
  return m;
}

ContinuousPartition evaluate_partition(const BallMeasureFamily& family, const WeightedSites& ws) {
  ContinuousPartition out;
  out.generator = ws;
  out.regions = power_cells(ws);
  const double n = static_cast<double>(ws.size());
  out.deviation.assign(family.colors(), std::vector<double>(ws.size()));
  for (int c = 1; c <= family.colors(); ++c) {
    const double target = family.total_mass(c) / n;
    for (std::size_t j = 0; j < ws.size(); ++j) {
      out.deviation[c - 1][j] = region_mass(family, c, out.regions[j]) - target;
    }
  }
  return out;
}

MassJacobian mass_jacobian(const BallMeasureFamily& family, const WeightedSites& ws) {
  const std::size_t n = ws.size();
  const int colors = family.colors();
  const std::vector<ConvexRegion> cells = power_cells(ws);
  MassJacobian out;
  out.masses.resize(colors * n);
  out.jacobian = Eigen::MatrixXd::Zero(colors * n, 3 * n);
  for (int c = 1; c <= colors; ++c) {
    for (std::size_t j = 0; j < n; ++j) out.masses((c - 1) * n + j) = region_mass(family, c, cells[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      auto piece = boundary_piece(cells[j], neighbor_slot(j, k));
      if (!piece) continue;
      const double g = 2.0 * norm(ws.sites[j] - ws.sites[k]);
      for (int c = 1; c <= colors; ++c) {
        const LineDensity line = line_density(family, c, *piece);
        if (line.mass == 0.0) continue;
        // Growing cell j by a normal displacement delta moves mass delta * rho ds across the edge.
        const Point2 dj = (2.0 / g) * (line.moment - line.mass * ws.sites[j]);
        const Point2 dk = (2.0 / g) * (line.moment - line.mass * ws.sites[k]);
        const double dw = line.mass / g;
        for (std::size_t row : {(c - 1) * n + j, (c - 1) * n + k}) {
          const double sign = row == (c - 1) * n + j ? 1.0 : -1.0;
          out.jacobian(row, 3 * j + 0) += sign * dj.x;
          out.jacobian(row, 3 * j + 1) += sign * dj.y;
          out.jacobian(row, 3 * j + 2) += sign * dw;
          out.jacobian(row, 3 * k + 0) -= sign * dk.x;
          out.jacobian(row, 3 * k + 1) -= sign * dk.y;
          out.jacobian(row, 3 * k + 2) -= sign * dw;
        }
      }
    }
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

using Params = Eigen::VectorXd;

WeightedSites to_sites(const Params& theta) {
  const std::size_t n = theta.size() / 3;
  WeightedSites ws;
  for (std::size_t j = 0; j < n; ++j) {
    ws.sites.push_back({theta(3 * j), theta(3 * j + 1)});
    ws.weights.push_back(theta(3 * j + 2));
  }
  return ws;
}

// Separates sites that came closer than min_gap; deterministic.
void separate_sites(Params& theta, double min_gap) {
  const std::size_t n = theta.size() / 3;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double dx = theta(3 * k) - theta(3 * j);
      const double dy = theta(3 * k + 1) - theta(3 * j + 1);
      if (std::hypot(dx, dy) < min_gap) {
        theta(3 * k) += min_gap * (1.0 + 0.1 * static_cast<double>(k));
        theta(3 * k + 1) += min_gap * 0.5;
      }
    }
  }
}

class ContinuationSolver {
 public:
  ContinuationSolver(const BallMeasureFamily& family, int n, double min_gap)
      : base_(family), n_(static_cast<std::size_t>(n)), min_gap_(min_gap), targets_(family.colors() * n) {
    for (int c = 1; c <= family.colors(); ++c) {
      for (std::size_t j = 0; j < n_; ++j) targets_((c - 1) * n_ + j) = family.total_mass(c) / static_cast<double>(n);
    }
  }

  Eigen::VectorXd residual(const BallMeasureFamily& family, const Params& theta) const {
    const WeightedSites ws = to_sites(theta);
    const auto cells = power_cells(ws);
    Eigen::VectorXd r(targets_.size());
    for (int c = 1; c <= family.colors(); ++c) {
      for (std::size_t j = 0; j < n_; ++j) r((c - 1) * n_ + j) = region_mass(family, c, cells[j]);
    }
    return r - targets_;
  }

  /// Damped Gauss-Newton on the cell-mass residuals. Returns the final max residual.
  double levenberg_marquardt(const BallMeasureFamily& family, Params& theta, double tolerance, int max_iter) {
    separate_sites(theta, min_gap_);
    Eigen::VectorXd r = residual(family, theta);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < max_iter && r.lpNorm<Eigen::Infinity>() > tolerance; ++it) {
      ++iterations_;
      const MassJacobian mj = mass_jacobian(family, to_sites(theta));
      const Eigen::MatrixXd a = mj.jacobian.transpose() * mj.jacobian;
      const Eigen::VectorXd g = mj.jacobian.transpose() * r;
      const double ridge = std::max(1e-12, 1e-9 * a.diagonal().maxCoeff());
      bool accepted = false;
      for (int tries = 0; tries < 12 && !accepted; ++tries) {
        Eigen::MatrixXd damped = a;
        damped.diagonal() += lambda * (a.diagonal().array() + ridge).matrix();
        const Eigen::VectorXd step = damped.ldlt().solve(-g);
        if (!step.allFinite()) {
          lambda *= 10.0;
          continue;
        }
        Params trial = theta + step;
        separate_sites(trial, min_gap_);
        const Eigen::VectorXd tr = residual(family, trial);
        const double trial_cost = tr.squaredNorm();
        if (trial_cost < cost) {
          theta = std::move(trial);
          r = tr;
          cost = trial_cost;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
        } else {
          lambda *= 4.0;
        }
      }
      if (!accepted) break;
    }
    return r.lpNorm<Eigen::Infinity>();
  }

  /// Before shrinking the disks by `ratio`, move every edge so that the disks
  /// it cuts keep their cut fractions: the signed power difference at each cut
  /// center is scaled by the same ratio (least-norm solution).
  void predict(const BallMeasureFamily& family, Params& theta, double ratio) const {
    const WeightedSites ws = to_sites(theta);
    const auto cells = power_cells(ws);
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    const double r2 = family.epsilon * family.epsilon;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = j + 1; k < n_; ++k) {
        auto piece = boundary_piece(cells[j], neighbor_slot(j, k));
        if (!piece) continue;
        for (const auto& centers : family.centers) {
          for (const Point2& c : centers) {
            if (!chord_meets_piece(*piece, c, r2)) continue;
            Eigen::VectorXd row = Eigen::VectorXd::Zero(3 * n_);
            const Point2 gj = 2.0 * (c - ws.sites[j]);
            const Point2 gk = 2.0 * (c - ws.sites[k]);
            row(3 * j) = gj.x;
            row(3 * j + 1) = gj.y;
            row(3 * j + 2) = 1.0;
            row(3 * k) = -gk.x;
            row(3 * k + 1) = -gk.y;
            row(3 * k + 2) = -1.0;
            const double diff = (ws.weights[j] - squared_norm(c - ws.sites[j])) -
                                (ws.weights[k] - squared_norm(c - ws.sites[k]));
            rows.push_back(std::move(row));
            rhs.push_back((ratio - 1.0) * diff);
          }
        }
      }
    }
    if (rows.empty()) return;
    Eigen::MatrixXd a(rows.size(), 3 * n_);
    Eigen::VectorXd b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      a.row(i) = rows[i].transpose();
      b(i) = rhs[i];
    }
    const Eigen::VectorXd step = a.completeOrthogonalDecomposition().solve(b);
    if (step.allFinite()) theta += step;
  }

  int iterations() const { return iterations_; }

 private:
  static bool chord_meets_piece(const BoundaryPiece<double>& piece, const Point2& c, double r2) {
    const double qa = squared_norm(piece.direction);
    const Point2 rel = piece.origin - c;
    const double qb = 2.0 * dot(piece.direction, rel);
    const double qc = squared_norm(rel) - r2;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return false;
    const double root = std::sqrt(disc);
    double t1 = (-qb - root) / (2.0 * qa);
    double t2 = (-qb + root) / (2.0 * qa);
    if (piece.lower) t1 = std::max(t1, *piece.lower);
    if (piece.upper) t2 = std::min(t2, *piece.upper);
    return t2 > t1;
  }

  const BallMeasureFamily& base_;
  std::size_t n_;
  double min_gap_;
  Eigen::VectorXd targets_;
  int iterations_ = 0;
};

constexpr double kStartRadius = 1.0;  // in units of the data extent
constexpr double kShrink = 0.7;
constexpr double kFinestShrink = 0.97;
constexpr int kLevelIterations = 60;
constexpr int kIterationBudget = 6000;

}  // namespace

ContinuousPartition equipartition_attempt(const BallMeasureFamily& family, int n, const EquipartitionOptions& options,
                                          int restart) {
  if (n < 1) throw std::invalid_argument("number of parts must be positive");
  if (family.colors() != 2) throw std::invalid_argument("the continuous solver handles two colors in the plane");
  for (int c = 1; c <= family.colors(); ++c) {
    if (family.color_centers(c).empty()) throw std::invalid_argument("every color class must be nonempty");
  }

  // Work in coordinates where the data spans unit extent.
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  for (const auto& centers : family.centers) {
    for (const auto& p : centers) {
      lo_x = std::min(lo_x, p.x); hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y); hi_y = std::max(hi_y, p.y);
    }
  }
  const Point2 origin{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  double extent = std::max(hi_x - lo_x, hi_y - lo_y);
  if (!(extent > 0.0)) extent = std::max(family.epsilon, 1.0);

  if (n == 1) return evaluate_partition(family, WeightedSites{{origin}, {0.0}});

  BallMeasureFamily unit;
  unit.epsilon = family.epsilon / extent;
  for (const auto& centers : family.centers) {
    auto& out = unit.centers.emplace_back();
    for (const auto& p : centers) out.push_back((1.0 / extent) * (p - origin));
  }

  std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(restart) + 1)));
  const double min_gap = 1e-6;
  Params theta = Params::Zero(3 * n);
  for (int j = 0; j < n; ++j) {
    theta(3 * j) = (unit_uniform(rng) - 0.5) * (hi_x - lo_x) / extent;
    theta(3 * j + 1) = (unit_uniform(rng) - 0.5) * (hi_y - lo_y) / extent;
  }
  separate_sites(theta, min_gap);

  ContinuationSolver solver(unit, n, min_gap);
  const double final_radius = unit.epsilon;
  const double inner_tol = std::min(1e-2 * options.tolerance, 1e-6);
  double radius = std::max(kStartRadius, final_radius);

  {
    const BallMeasureFamily start = unit.with_radius(radius);
    WeightedSites ws = to_sites(theta);
    std::vector<double> targets(n, start.total_mass(1) / n);
    try {
      auto solved = solve_weights(start, ws.sites, targets, {options.weight_tolerance, 200, 1});
      for (int j = 0; j < n; ++j) theta(3 * j + 2) = solved.weights[j];
    } catch (const WeightSolveError& e) {
      for (int j = 0; j < n; ++j) theta(3 * j + 2) = e.best_weights()[j];
    }
    solver.levenberg_marquardt(start, theta, inner_tol, 4 * kLevelIterations);
  }

  double shrink = kShrink;
  while (radius > final_radius && solver.iterations() < kIterationBudget) {
    const double next = std::max(final_radius, radius * shrink);
    Params trial = theta;
    solver.predict(unit.with_radius(radius), trial, next / radius);
    const double err = solver.levenberg_marquardt(unit.with_radius(next), trial, inner_tol, kLevelIterations);
    if (err <= inner_tol) {
      theta = std::move(trial);
      radius = next;
      shrink = std::max(kShrink, shrink * shrink);
    } else if (shrink < kFinestShrink) {
      shrink = std::sqrt(shrink);
    } else {
      // Accept the best effort and keep going; the final check decides.
      theta = std::move(trial);
      radius = next;
    }
  }
  solver.levenberg_marquardt(unit.with_radius(final_radius), theta, 1e-3 * inner_tol, kLevelIterations);

  WeightedSites ws;
  for (int j = 0; j < n; ++j) {
    ws.sites.push_back(origin + extent * Point2{theta(3 * j), theta(3 * j + 1)});
    ws.weights.push_back(extent * extent * theta(3 * j + 2));
  }
  ws.normalize();
  return evaluate_partition(family, ws);
}

EquipartitionResult continuous_equipartition(const BallMeasureFamily& family, int n,
                                             const EquipartitionOptions& options) {
  EquipartitionResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < std::max(1, options.max_restarts); ++restart) {
    ContinuousPartition attempt = equipartition_attempt(family, n, options, restart);
    result.restarts_used = restart + 1;
    const double dev = attempt.max_deviation();
    if (dev <= options.tolerance) {
      result.success = true;
      result.partition = std::move(attempt);
      return result;
    }
    if (dev < best) {
      best = dev;
      result.partition = std::move(attempt);
    }
  }
  return result;
}

}  // namespace colorpart
