#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "colorpart/io.hpp"
#include "colorpart/pipeline.hpp"
#include "colorpart/svg.hpp"

using namespace colorpart;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitBadInput = 2;

struct PartitionArgs {
  std::string instance;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> max_restarts;
  std::optional<double> epsilon;
  std::string dump_network;
  std::string output;
  bool verbose = false;
};

int cmd_partition(const PartitionArgs& args) {
  const Instance inst = load_instance(args.instance);
  PartitionOptions options = resolve_options(inst, args.n, args.seed, args.tol, args.max_restarts);
  options.epsilon_override = args.epsilon;
  std::ostringstream dump;
  if (!args.dump_network.empty()) options.network_dump = &dump;

  const PartitionOutcome outcome = run_partition(inst.points, options);
  if (args.verbose) {
    for (const auto& a : outcome.attempts) {
      std::cerr << "restart " << a.restart << ": deviation " << a.max_deviation
                << (a.within_tolerance ? "" : " (above tolerance)")
                << (a.within_tolerance ? (a.flow_feasible ? ", flow feasible" : ", flow infeasible") : "")
                << (a.flow_feasible ? (a.certified ? ", certified" : ", not certified") : "") << '\n';
    }
  }
  if (!outcome.success) {
    std::cerr << "colorpart: " << outcome.failure << '\n';
    return kExitFailure;
  }
  if (!args.dump_network.empty()) write_file_atomic(args.dump_network, dump.str());
  const std::string json = result_to_json(outcome.result);
  if (args.output.empty() || args.output == "-") {
    std::cout << json;
  } else {
    write_file_atomic(args.output, json);
  }
  const auto& r = outcome.result;
  std::cerr << "partitioned " << r.assignment.size() << " points into " << r.n << " parts (sizes";
  for (auto s : r.part_sizes) std::cerr << ' ' << s;
  std::cerr << "), " << r.witnesses.size() << " separating lines, " << r.diagnostics.restarts_used
            << " restart(s), max deviation " << r.diagnostics.max_deviation << '\n';
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& result_path) {
  const Instance inst = load_instance(instance_path);
  const ResultFile result = load_result(result_path);
  const VerifyReport report = verify_result(inst.points, result);
  for (const auto& m : report.messages) std::cerr << "violation: " << m << '\n';
  std::cout << (report.valid ? "valid" : "invalid") << '\n';
  return report.valid ? 0 : kExitFailure;
}

int cmd_plot(const std::string& instance_path, const std::string& result_path, const std::string& output,
             bool regions) {
  const Instance inst = load_instance(instance_path);
  const ResultFile result = load_result(result_path);
  PlotOptions options;
  options.regions = regions;
  write_file_atomic(output, render_svg(inst.points, result, options));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition two-colored planar point sets into n parts with pairwise disjoint convex hulls that "
               "equipartition both colors."};
  app.require_subcommand(1);

  PartitionArgs pa;
  auto* partition = app.add_subcommand("partition", "Compute and certify a partition");
  partition->add_option("instance", pa.instance, "Instance file (.json or .csv)")->required();
  partition->add_option("--n", pa.n, "Number of parts (overrides the instance)");
  partition->add_option("--seed", pa.seed, "Random seed for the continuous solver");
  partition->add_option("--tol", pa.tol, "Tolerance on cell masses, in units of one ball");
  partition->add_option("--max-restarts", pa.max_restarts, "Restart budget");
  partition->add_option("--epsilon-override", pa.epsilon, "Use this ball radius instead of the safe one");
  partition->add_option("--dump-network", pa.dump_network, "Write the incidence network as an edge list");
  partition->add_option("-o,--output", pa.output, "Result file (default: stdout)");
  partition->add_flag("-v,--verbose", pa.verbose, "Report every restart");

  std::string v_instance, v_result;
  auto* verify = app.add_subcommand("verify", "Recertify a result against its instance");
  verify->add_option("instance", v_instance, "Instance file")->required();
  verify->add_option("result", v_result, "Result file")->required();

  std::string p_instance, p_result, p_output;
  bool no_regions = false;
  auto* plot = app.add_subcommand("plot", "Draw an instance and its partition as SVG");
  plot->add_option("instance", p_instance, "Instance file")->required();
  plot->add_option("result", p_result, "Result file")->required();
  plot->add_option("-o,--output", p_output, "SVG file")->required();
  plot->add_flag("--no-regions", no_regions, "Omit the power regions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*partition) return cmd_partition(pa);
    if (*verify) return cmd_verify(v_instance, v_result);
    if (*plot) return cmd_plot(p_instance, p_result, p_output, !no_regions);
  } catch (const InputError& e) {
    std::cerr << "colorpart: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "colorpart: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
