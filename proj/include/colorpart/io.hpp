#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "colorpart/certification.hpp"
#include "colorpart/point_set.hpp"

namespace colorpart {

/// Thrown for malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  ColoredPointSet points;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<int> max_restarts;
};

/// JSON instance: {"dimension": 2, "n": 3, "points": [{"coords": ["0.1", "0.25"], "color": 1}, ...],
/// optional "seed", "tolerance", "max_restarts"}. Coordinates are decimal strings
/// (plain JSON numbers are accepted and read through their shortest decimal form).
Instance parse_instance_json(const std::string& text);

/// CSV rows "x,y,color"; blank lines, '#' comments and a non-numeric header row are skipped.
Instance parse_instance_csv(const std::string& text);

/// Dispatches on the extension: .csv is CSV, anything else JSON.
Instance load_instance(const std::filesystem::path& path);

std::string instance_to_json(const Instance& instance);

struct Diagnostics {
  std::uint64_t seed = 1;
  double tolerance = 1e-4;
  int max_restarts = 20;
  double epsilon = 0.0;
  /// The geometric bound epsilon sits below; 0 when overridden.
  double epsilon_bound = 0.0;
  bool epsilon_overridden = false;
  int restarts_used = 0;
  double max_deviation = 0.0;
  /// deviations[c - 1][j] = mu_c(C_j) - |X_c| / n.
  std::vector<std::vector<double>> deviations;
  /// max over colors of |sum_j mu_c(C_j) - |X_c||.
  double completeness_residual = 0.0;
  double fractional_violation = 0.0;
  std::vector<std::vector<double>> sites;
  std::vector<double> weights;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

/// The saved outcome of a partition run. Parts are numbered 1..n in the file
/// and 0..n-1 in memory.
struct ResultFile {
  int dimension = 2;
  int n = 1;
  std::vector<int> assignment;
  std::vector<std::size_t> part_sizes;
  std::vector<std::vector<std::size_t>> color_counts;
  std::vector<SeparationWitness> witnesses;
  Diagnostics diagnostics;

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

std::string result_to_json(const ResultFile& result);
ResultFile parse_result_json(const std::string& text);
ResultFile load_result(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace colorpart
