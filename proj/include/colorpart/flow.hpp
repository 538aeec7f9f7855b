#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "colorpart/ball_measures.hpp"
#include "colorpart/geometry.hpp"
#include "colorpart/point_set.hpp"

namespace colorpart {

struct FlowArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

/// A digraph with integer bounds on every arc value and on every vertex
/// excess (inflow minus outflow).
struct BoundedFlowProblem {
  std::vector<std::string> labels;
  std::vector<std::int64_t> excess_lower;
  std::vector<std::int64_t> excess_upper;
  std::vector<FlowArc> arcs;

  std::size_t vertex_count() const { return labels.size(); }
  std::size_t add_vertex(std::string label, std::int64_t lower, std::int64_t upper);
  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t lower, std::int64_t upper);

  /// Throws std::invalid_argument if an endpoint is out of range or a lower
  /// bound exceeds its upper bound.
  void validate() const;
};

template <class T>
std::vector<T> vertex_excess(const BoundedFlowProblem& problem, const std::vector<T>& flow) {
  std::vector<T> ex(problem.vertex_count(), T{});
  for (std::size_t a = 0; a < problem.arcs.size(); ++a) {
    ex[problem.arcs[a].to] += flow[a];
    ex[problem.arcs[a].from] -= flow[a];
  }
  return ex;
}

/// Description of the first bound the integer flow breaks, if any.
std::optional<std::string> find_bound_violation(const BoundedFlowProblem& problem,
                                                const std::vector<std::int64_t>& flow);

/// Largest amount by which a real flow leaves an arc or excess interval.
double max_bound_violation(const BoundedFlowProblem& problem, const std::vector<double>& flow);

/// Classical single-source single-sink network obtained from a bounded
/// problem: arcs with a negative lower bound are split into a forward and a
/// reverse part, lower bounds are offset into the excess bounds, a balancing
/// sink absorbs excess slack, and a super-source and super-sink are added.
struct ReducedNetwork {
  struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    std::int64_t capacity = 0;
  };
  /// Original vertices keep their indices; then B, S, T.
  std::size_t node_count = 0;
  std::size_t balance = 0;
  std::size_t source = 0;
  std::size_t sink = 0;
  std::vector<Arc> arcs;
  /// Per original arc: reduced forward arc, optional reduced reverse arc,
  /// and the offset added back when mapping a flow.
  std::vector<std::size_t> forward;
  std::vector<std::optional<std::size_t>> reverse;
  std::vector<std::int64_t> offset;
  /// Excess bounds after offsetting.
  std::vector<std::int64_t> excess_lower;
  std::vector<std::int64_t> excess_upper;
  std::int64_t total_supply = 0;
  /// Demand of B; negative means the lower excess bounds alone exceed the supply.
  std::int64_t balance_demand = 0;
};

ReducedNetwork reduce_to_max_flow(const BoundedFlowProblem& problem);

/// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes);
  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::int64_t run(std::size_t source, std::size_t sink);
  std::int64_t flow(std::size_t edge) const;

 private:
  struct Edge {
    std::size_t to;
    std::int64_t capacity;
  };
  bool bfs(std::size_t source, std::size_t sink);
  std::int64_t dfs(std::size_t v, std::size_t sink, std::int64_t pushed);

  std::vector<Edge> edges_;
  std::vector<std::int64_t> initial_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

struct IntegralFlowResult {
  bool feasible = false;
  std::vector<std::int64_t> flow;
  std::int64_t flow_value = 0;
  std::int64_t required = 0;
};

/// An integer flow meeting every bound, or feasible == false. A returned
/// flow is checked against all bounds before returning.
IntegralFlowResult integral_flow(const BoundedFlowProblem& problem);

/// The incidence network of a colored point set against n planar regions.
/// Vertices: points x_0.. (in input order), then y_i^j for color i and
/// region j at point_count + (i - 1) * n + j, then C_j.
struct IncidenceNetwork {
  BoundedFlowProblem problem;
  std::size_t point_count = 0;
  int colors = 0;
  int parts = 0;
  std::vector<int> point_color;
  /// Arcs 0 .. incidence.size()-1 are the point arcs; incidence[a] = (point, region).
  std::vector<std::pair<std::size_t, int>> incidence;
  /// region_arc[i - 1][j] is the arc y_i^j -> C_j.
  std::vector<std::vector<std::size_t>> region_arc;

  std::size_t y_vertex(int color, int region) const;
  std::size_t region_vertex(int region) const;
};

/// Arcs x -> y_i^j wherever the closed ball of radius epsilon around x meets
/// region j (decided exactly), with the floor/ceil bounds of the
/// equipartition. Throws std::logic_error if some ball meets no region.
IncidenceNetwork build_network(const ColoredPointSet& ps, double epsilon, const std::vector<ConvexRegion>& regions);

struct FractionalFlow {
  std::vector<double> values;
  double max_violation = 0.0;
};

/// f(x, y_i^j) = mass of the ball of x inside region j, f(y_i^j, C_j) = |X_i| / n.
FractionalFlow fractional_flow(const IncidenceNetwork& network, const BallMeasureFamily& family,
                               const std::vector<ConvexRegion>& regions);

/// 0-based region of each point. Throws std::logic_error unless every point
/// sends exactly one unit along exactly one arc.
std::vector<int> extract_assignment(const IncidenceNetwork& network, const std::vector<std::int64_t>& flow);

/// Plain-text edge list: "u v lower upper" per arc and "# excess v lo hi" per vertex.
void write_network(std::ostream& out, const BoundedFlowProblem& problem);

}  // namespace colorpart
