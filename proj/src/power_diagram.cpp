#include "colorpart/power_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

namespace colorpart {

void WeightedSites::normalize() {
  if (weights.empty()) return;
  const double last = weights.back();
  for (double& w : weights) w -= last;
}

namespace {

void validate(const WeightedSites& ws) {
  if (ws.sites.size() != ws.weights.size()) throw std::invalid_argument("one weight per site required");
  for (std::size_t j = 0; j < ws.size(); ++j) {
    for (std::size_t k = j + 1; k < ws.size(); ++k) {
      if (ws.sites[j] == ws.sites[k]) {
        throw std::invalid_argument("coincident sites " + std::to_string(j) + " and " + std::to_string(k));
      }
    }
  }
}

ConvexRegion cell_unchecked(const WeightedSites& ws, std::size_t j) {
  ConvexRegion cell;
  cell.halfplanes.reserve(ws.size() - 1);
  const Point2& sj = ws.sites[j];
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (k == j) continue;
    const Point2& sk = ws.sites[k];
    // Grouping keeps the (j,k) and (k,j) half-planes exact negations of each other.
    cell.halfplanes.push_back({2.0 * (sk - sj), (squared_norm(sk) - squared_norm(sj)) + (ws.weights[j] - ws.weights[k])});
  }
  return cell;
}

double cell_mass(const BallMeasureFamily& family, int color, const WeightedSites& ws, std::size_t j) {
  return region_mass(family, color, cell_unchecked(ws, j));
}

std::vector<double> deviations(const BallMeasureFamily& family, int color, const WeightedSites& ws,
                               std::span<const double> targets) {
  std::vector<double> dev(ws.size());
  for (std::size_t j = 0; j < ws.size(); ++j) dev[j] = cell_mass(family, color, ws, j) - targets[j];
  return dev;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// d mass_j / d w_k for the given color, from the density along cell edges.
Eigen::MatrixXd weight_hessian(const BallMeasureFamily& family, int color, const WeightedSites& ws) {
  const std::size_t n = ws.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const ConvexRegion cell = cell_unchecked(ws, j);
    for (std::size_t k = j + 1; k < n; ++k) {
      auto piece = boundary_piece(cell, neighbor_slot(j, k));
      if (!piece) continue;
      const double flux = line_density(family, color, *piece).mass / (2.0 * norm(ws.sites[j] - ws.sites[k]));
      h(j, j) += flux;
      h(k, k) += flux;
      h(j, k) -= flux;
      h(k, j) -= flux;
    }
  }
  return h;
}

// Raise or lower w_j until cell j carries its target mass (others fixed).
void bisect_weight(const BallMeasureFamily& family, int color, WeightedSites& ws, std::size_t j, double target,
                   double tolerance, double scale) {
  auto f = [&](double w) {
    ws.weights[j] = w;
    return cell_mass(family, color, ws, j) - target;
  };
  const double start = ws.weights[j];
  double f0 = f(start);
  if (std::abs(f0) <= tolerance) return;

  double lo = start, hi = start;
  double step = scale * 1e-3;
  bool bracketed = false;
  for (int i = 0; i < 80 && !bracketed; ++i, step *= 2.0) {
    if (f0 < 0) {
      hi = start + step;
      if (f(hi) >= 0) bracketed = true; else lo = hi;
    } else {
      lo = start - step;
      if (f(lo) <= 0) bracketed = true; else hi = lo;
    }
  }
  if (!bracketed) {
    ws.weights[j] = start;
    return;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tolerance || mid == lo || mid == hi) return;
    if (fm < 0) lo = mid; else hi = mid;
  }
}

}  // namespace

ConvexRegion power_cell(const WeightedSites& ws, std::size_t j) {
  validate(ws);
  return cell_unchecked(ws, j);
}

std::vector<ConvexRegion> power_cells(const WeightedSites& ws) {
  validate(ws);
  std::vector<ConvexRegion> cells;
  cells.reserve(ws.size());
  for (std::size_t j = 0; j < ws.size(); ++j) cells.push_back(cell_unchecked(ws, j));
  return cells;
}

std::vector<ExactRegion> exact_power_cells(const WeightedSites& ws) {
  validate(ws);
  const std::size_t n = ws.size();
  std::vector<ExactPoint2> s(n);
  std::vector<Rational> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    s[j] = {to_rational(ws.sites[j].x), to_rational(ws.sites[j].y)};
    w[j] = to_rational(ws.weights[j]);
  }
  std::vector<ExactRegion> cells(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const ExactPoint2 diff = s[k] - s[j];
      cells[j].halfplanes.push_back({Rational(2) * diff, Rational(squared_norm(s[k]) - squared_norm(s[j]) + w[j] - w[k])});
    }
  }
  return cells;
}

WeightSolveError::WeightSolveError(double best_deviation, std::vector<double> best_weights)
    : std::runtime_error("weight solve did not converge (best deviation " + std::to_string(best_deviation) + ")"),
      best_deviation_(best_deviation),
      best_weights_(std::move(best_weights)) {}

WeightSolveResult solve_weights(const BallMeasureFamily& family, std::span<const Point2> sites,
                                std::span<const double> targets, const WeightSolveOptions& options,
                                std::span<const double> initial_weights) {
  const std::size_t n = sites.size();
  if (n == 0) throw std::invalid_argument("solve_weights needs at least one site");
  if (targets.size() != n) throw std::invalid_argument("one target per site required");
  for (double t : targets) {
    if (!(t > 0.0)) throw std::invalid_argument("targets must be positive");
  }
  const double total = std::accumulate(targets.begin(), targets.end(), 0.0);
  if (std::abs(total - family.total_mass(options.color)) > 1e-9 * std::max(1.0, total)) {
    throw std::invalid_argument("targets must sum to the total mass of the color");
  }

  WeightedSites ws{{sites.begin(), sites.end()}, std::vector<double>(n, 0.0)};
  if (!initial_weights.empty()) {
    if (initial_weights.size() != n) throw std::invalid_argument("one initial weight per site required");
    ws.weights.assign(initial_weights.begin(), initial_weights.end());
  }
  validate(ws);
  if (n == 1) return {{0.0}, 0.0, 0};

  // Weights are squared lengths; bracket steps scale with the squared extent of the data.
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  auto extend = [&](const Point2& p) {
    lo_x = std::min(lo_x, p.x); hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y); hi_y = std::max(hi_y, p.y);
  };
  for (const auto& p : sites) extend(p);
  for (const auto& p : family.color_centers(options.color)) extend(p);
  const double scale = std::max(std::pow(hi_x - lo_x, 2) + std::pow(hi_y - lo_y, 2), 1e-300);

  std::vector<double> dev = deviations(family, options.color, ws, targets);
  double err = max_abs(dev);
  WeightedSites best = ws;
  double best_err = err;

  int sweep = 0;
  for (; sweep < options.max_sweeps && err > options.tolerance; ++sweep) {
    bool improved = false;

    Eigen::MatrixXd h = weight_hessian(family, options.color, ws);
    Eigen::VectorXd rhs(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) rhs(j) = -dev[j];
    Eigen::MatrixXd reduced = h.topLeftCorner(n - 1, n - 1);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && reduced.diagonal().minCoeff() > 0.0) {
      Eigen::VectorXd step = ldlt.solve(rhs);
      if (step.allFinite()) {
        double alpha = 1.0;
        for (int tries = 0; tries < 8 && !improved; ++tries, alpha *= 0.5) {
          WeightedSites trial = ws;
          for (std::size_t j = 0; j + 1 < n; ++j) trial.weights[j] += alpha * step(j);
          auto trial_dev = deviations(family, options.color, trial, targets);
          const double trial_err = max_abs(trial_dev);
          if (trial_err < err) {
            ws = std::move(trial);
            dev = std::move(trial_dev);
            err = trial_err;
            improved = true;
          }
        }
      }
    }

    if (!improved) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(dev[j]) > 0.5 * options.tolerance) {
          bisect_weight(family, options.color, ws, j, targets[j], 0.25 * options.tolerance, scale);
        }
      }
      dev = deviations(family, options.color, ws, targets);
      err = max_abs(dev);
    }
    if (err < best_err) {
      best_err = err;
      best = ws;
    }
  }

  best.normalize();
  if (best_err > options.tolerance) throw WeightSolveError(best_err, best.weights);
  return {best.weights, best_err, sweep};
}

}  // namespace colorpart
