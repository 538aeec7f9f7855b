#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "colorpart/ball_measures.hpp"
#include "colorpart/geometry.hpp"

namespace colorpart {

/// Sites and weights of a power diagram. Cell j is
/// { x : |x - s_j|^2 - w_j <= |x - s_k|^2 - w_k for all k }.
struct WeightedSites {
  std::vector<Point2> sites;
  std::vector<double> weights;

  std::size_t size() const { return sites.size(); }
  /// Shift all weights so that the last one is zero (cells are unchanged).
  void normalize();
  friend bool operator==(const WeightedSites&, const WeightedSites&) = default;
};

/// Index of the half-plane of cell j that borders cell k (k != j).
inline std::size_t neighbor_slot(std::size_t j, std::size_t k) { return k < j ? k : k - 1; }

/// Cell j as the intersection of its n-1 bisector half-planes, in slot order.
ConvexRegion power_cell(const WeightedSites& ws, std::size_t j);

/// All cells; they tile the plane. Throws std::invalid_argument on
/// coincident sites or a size mismatch.
std::vector<ConvexRegion> power_cells(const WeightedSites& ws);

/// The same cells with coefficients evaluated exactly from the (binary) sites
/// and weights, so adjacent cells share their boundary lines exactly.
std::vector<ExactRegion> exact_power_cells(const WeightedSites& ws);

struct WeightSolveOptions {
  double tolerance = 1e-7;
  int max_sweeps = 400;
  int color = 1;
};

struct WeightSolveResult {
  std::vector<double> weights;
  double max_deviation = 0.0;
  int sweeps = 0;
};

class WeightSolveError : public std::runtime_error {
 public:
  WeightSolveError(double best_deviation, std::vector<double> best_weights);
  double best_deviation() const { return best_deviation_; }
  const std::vector<double>& best_weights() const { return best_weights_; }

 private:
  double best_deviation_;
  std::vector<double> best_weights_;
};

/// Weights that give cell j mass targets[j] of the chosen color, with the
/// sites fixed. Coordinate ascent on the concave dual (each weight is raised
/// while its cell is underweight, by bisection) accelerated with Newton steps
/// whose Hessian comes from the measure density on the cell edges.
/// Deterministic; the result has weights.back() == 0.
WeightSolveResult solve_weights(const BallMeasureFamily& family, std::span<const Point2> sites,
                                std::span<const double> targets, const WeightSolveOptions& options = {},
                                std::span<const double> initial_weights = {});

}  // namespace colorpart
