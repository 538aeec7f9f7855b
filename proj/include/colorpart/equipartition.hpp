#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "colorpart/ball_measures.hpp"
#include "colorpart/power_diagram.hpp"

namespace colorpart {

/// n power cells and how far each color's mass in each cell is from |X_i|/n.
struct ContinuousPartition {
  WeightedSites generator;
  std::vector<ConvexRegion> regions;
  /// deviation[c - 1][j] = mu_c(C_j) - |X_c| / n.
  std::vector<std::vector<double>> deviation;

  double max_deviation() const;
};

/// Regions and deviations of the power diagram generated by ws.
ContinuousPartition evaluate_partition(const BallMeasureFamily& family, const WeightedSites& ws);

struct EquipartitionOptions {
  double tolerance = 1e-4;
  double weight_tolerance = 1e-7;
  std::uint64_t seed = 1;
  int max_restarts = 20;
};

struct EquipartitionResult {
  bool success = false;
  /// The first successful restart, or the best one seen on failure.
  ContinuousPartition partition;
  int restarts_used = 0;
};

/// One seeded attempt (restart index r) at a simultaneous equipartition of
/// both color measures by n power cells.
ContinuousPartition equipartition_attempt(const BallMeasureFamily& family, int n,
                                          const EquipartitionOptions& options, int restart);

/// Multi-start driver: runs restarts 0, 1, ... until one reaches the
/// tolerance. On failure returns the best partition seen with success = false.
EquipartitionResult continuous_equipartition(const BallMeasureFamily& family, int n,
                                             const EquipartitionOptions& options = {});

/// Cell masses and their derivatives with respect to the generator.
/// Row c*n + j is mu_{c+1}(C_j); columns are (s_x, s_y, w) for each site in turn.
struct MassJacobian {
  Eigen::VectorXd masses;
  Eigen::MatrixXd jacobian;
};

MassJacobian mass_jacobian(const BallMeasureFamily& family, const WeightedSites& ws);

}  // namespace colorpart
