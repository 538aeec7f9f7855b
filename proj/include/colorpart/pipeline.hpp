#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "colorpart/io.hpp"
#include "colorpart/point_set.hpp"

namespace colorpart {

struct PartitionOptions {
  int n = 1;
  std::uint64_t seed = 1;
  double tolerance = 1e-4;
  int max_restarts = 20;
  std::optional<double> epsilon_override;
  /// Receives the incidence network of the accepted attempt when set.
  std::ostream* network_dump = nullptr;
};

/// Per-restart record of what happened.
struct AttemptLog {
  int restart = 0;
  double max_deviation = 0.0;
  bool within_tolerance = false;
  bool flow_feasible = false;
  bool certified = false;
};

struct PartitionOutcome {
  bool success = false;
  /// Filled on success.
  ResultFile result;
  std::vector<AttemptLog> attempts;
  /// Why the run failed, when it did.
  std::string failure;
};

/// Options from the instance file, overridden by anything set in overrides.
PartitionOptions resolve_options(const Instance& instance, std::optional<int> n, std::optional<std::uint64_t> seed,
                                 std::optional<double> tolerance, std::optional<int> max_restarts);

/// Throws InputError for inputs the pipeline cannot accept: dimension other
/// than 2, n outside 1..|X|, or points not in general position.
void validate_partition_input(const ColoredPointSet& ps, int n);

/// Safe radius, then for each restart a continuous equipartition, the
/// incidence network and its integral flow, the assignment, and certification.
/// The first certified restart wins.
PartitionOutcome run_partition(const ColoredPointSet& ps, const PartitionOptions& options);

struct VerifyReport {
  bool valid = false;
  std::vector<std::string> messages;
};

/// Recertifies the result's assignment from scratch and checks the stored
/// sizes and witnesses against it. Throws InputError when the result does not
/// belong to the instance.
VerifyReport verify_result(const ColoredPointSet& ps, const ResultFile& result);

}  // namespace colorpart
