#include "colorpart/pipeline.hpp"

#include <cmath>
#include <numeric>

#include "colorpart/ball_measures.hpp"
#include "colorpart/certification.hpp"
#include "colorpart/equipartition.hpp"
#include "colorpart/flow.hpp"

namespace colorpart {

PartitionOptions resolve_options(const Instance& instance, std::optional<int> n, std::optional<std::uint64_t> seed,
                                 std::optional<double> tolerance, std::optional<int> max_restarts) {
  PartitionOptions o;
  if (n) o.n = *n;
  else if (instance.n) o.n = *instance.n;
  else throw InputError("the number of parts is given neither in the instance nor by --n");
  o.seed = seed.value_or(instance.seed.value_or(o.seed));
  o.tolerance = tolerance.value_or(instance.tolerance.value_or(o.tolerance));
  o.max_restarts = max_restarts.value_or(instance.max_restarts.value_or(o.max_restarts));
  if (!(o.tolerance > 0.0)) throw InputError("tolerance must be positive");
  if (o.max_restarts < 1) throw InputError("max_restarts must be at least 1");
  return o;
}

void validate_partition_input(const ColoredPointSet& ps, int n) {
  if (ps.dimension() != 2) throw InputError("the partition solver supports dimension 2 only");
  if (ps.size() == 0) throw InputError("the instance has no points");
  if (n < 1) throw InputError("n must be at least 1");
  if (static_cast<std::size_t>(n) > ps.size()) {
    throw InputError("n = " + std::to_string(n) + " exceeds the number of points " + std::to_string(ps.size()));
  }
  if (auto bad = find_general_position_violation(ps)) {
    std::string names;
    for (std::size_t i = 0; i < bad->size(); ++i) names += (i ? ", " : "") + std::to_string((*bad)[i]);
    throw InputError("general position violated: points " + names +
                     (bad->size() == 3 ? " are collinear" : " coincide"));
  }
}

PartitionOutcome run_partition(const ColoredPointSet& ps, const PartitionOptions& options) {
  validate_partition_input(ps, options.n);
  const int n = options.n;

  Diagnostics diag;
  diag.seed = options.seed;
  diag.tolerance = options.tolerance;
  diag.max_restarts = options.max_restarts;
  if (options.epsilon_override) {
    if (!(*options.epsilon_override > 0.0)) throw InputError("epsilon override must be positive");
    diag.epsilon = *options.epsilon_override;
    diag.epsilon_overridden = true;
  } else {
    const SafeRadius safe = safe_radius(ps);
    diag.epsilon = safe.epsilon;
    diag.epsilon_bound = safe.bound;
  }
  const BallMeasureFamily family = make_ball_measures(ps, diag.epsilon);

  // A color with no points carries no measure; the other color decides the cells.
  BallMeasureFamily solve_family = family;
  if (family.color_centers(1).empty() || family.color_centers(2).empty()) {
    const auto& present = family.color_centers(1).empty() ? family.color_centers(2) : family.color_centers(1);
    solve_family.centers = {present, present};
  }

  EquipartitionOptions eq;
  eq.tolerance = options.tolerance;
  eq.seed = options.seed;
  eq.max_restarts = options.max_restarts;

  PartitionOutcome outcome;
  for (int restart = 0; restart < options.max_restarts; ++restart) {
    AttemptLog log;
    log.restart = restart;
    const ContinuousPartition cont = equipartition_attempt(solve_family, n, eq, restart);
    const ContinuousPartition real = evaluate_partition(family, cont.generator);
    log.max_deviation = real.max_deviation();
    log.within_tolerance = log.max_deviation <= options.tolerance;
    if (!log.within_tolerance) {
      outcome.attempts.push_back(log);
      continue;
    }

    const IncidenceNetwork network = build_network(ps, diag.epsilon, real.regions);
    const IntegralFlowResult flow = integral_flow(network.problem);
    log.flow_feasible = flow.feasible;
    if (!flow.feasible) {
      outcome.attempts.push_back(log);
      continue;
    }
    const std::vector<int> assignment = extract_assignment(network, flow.flow);
    CertifyResult cert = certify(assignment, ps, n);
    log.certified = cert.valid;
    outcome.attempts.push_back(log);
    if (!cert.valid) continue;

    if (options.network_dump) write_network(*options.network_dump, network.problem);
    diag.restarts_used = restart + 1;
    diag.max_deviation = log.max_deviation;
    diag.deviations = real.deviation;
    diag.completeness_residual = 0.0;
    for (const auto& row : real.deviation) {
      diag.completeness_residual =
          std::max(diag.completeness_residual, std::abs(std::accumulate(row.begin(), row.end(), 0.0)));
    }
    diag.fractional_violation = fractional_flow(network, family, real.regions).max_violation;
    for (std::size_t j = 0; j < real.generator.size(); ++j) {
      diag.sites.push_back({real.generator.sites[j].x, real.generator.sites[j].y});
    }
    diag.weights = real.generator.weights;

    ResultFile& r = outcome.result;
    r.dimension = ps.dimension();
    r.n = n;
    r.assignment = assignment;
    r.part_sizes = cert.certificate.ledger.part_sizes;
    r.color_counts = cert.certificate.ledger.color_counts;
    r.witnesses = std::move(cert.certificate.witnesses);
    r.diagnostics = std::move(diag);
    outcome.success = true;
    return outcome;
  }

  std::size_t close = 0, feasible = 0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : outcome.attempts) {
    close += a.within_tolerance;
    feasible += a.flow_feasible;
    best = std::min(best, a.max_deviation);
  }
  outcome.failure = "no certified partition after " + std::to_string(options.max_restarts) + " restarts (" +
                    std::to_string(close) + " within tolerance, " + std::to_string(feasible) +
                    " with a feasible flow; best deviation " + std::to_string(best) + ")";
  return outcome;
}

VerifyReport verify_result(const ColoredPointSet& ps, const ResultFile& result) {
  if (result.dimension != ps.dimension()) throw InputError("result dimension does not match the instance");
  if (result.assignment.size() != ps.size()) {
    throw InputError("result assigns " + std::to_string(result.assignment.size()) + " points but the instance has " +
                     std::to_string(ps.size()));
  }
  if (result.n < 1) throw InputError("result has no parts");
  for (std::size_t x = 0; x < result.assignment.size(); ++x) {
    if (result.assignment[x] < 0 || result.assignment[x] >= result.n) {
      throw InputError("point " + std::to_string(x) + " is assigned to a part outside 1.." + std::to_string(result.n));
    }
  }

  VerifyReport report;
  const CertifyResult cert = certify(result.assignment, ps, result.n);
  report.messages = cert.violations;
  if (result.part_sizes != cert.certificate.ledger.part_sizes) {
    report.messages.push_back("stored part sizes do not match the assignment");
  }
  if (result.color_counts != cert.certificate.ledger.color_counts) {
    report.messages.push_back("stored color counts do not match the assignment");
  }
  for (const auto& w : result.witnesses) {
    const std::string pair = std::to_string(w.part_a + 1) + " and " + std::to_string(w.part_b + 1);
    if (w.part_a < 0 || w.part_b < 0 || w.part_a >= result.n || w.part_b >= result.n ||
        w.plane.normal.size() != static_cast<std::size_t>(ps.dimension())) {
      report.messages.push_back("stored witness for parts " + pair + " is malformed");
      continue;
    }
    std::vector<std::vector<Rational>> plus, minus;
    for (std::size_t x = 0; x < ps.size(); ++x) {
      if (result.assignment[x] == w.part_a) plus.push_back(ps.coords(x));
      if (result.assignment[x] == w.part_b) minus.push_back(ps.coords(x));
    }
    if (!separates(w.plane, plus, minus)) {
      report.messages.push_back("stored witness does not separate parts " + pair);
    }
  }
  report.valid = report.messages.empty();
  return report;
}

}  // namespace colorpart
