#include "colorpart/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace colorpart {

std::size_t BoundedFlowProblem::add_vertex(std::string label, std::int64_t lower, std::int64_t upper) {
  labels.push_back(std::move(label));
  excess_lower.push_back(lower);
  excess_upper.push_back(upper);
  return labels.size() - 1;
}

std::size_t BoundedFlowProblem::add_arc(std::size_t from, std::size_t to, std::int64_t lower, std::int64_t upper) {
  arcs.push_back({from, to, lower, upper});
  return arcs.size() - 1;
}

void BoundedFlowProblem::validate() const {
  const std::size_t n = vertex_count();
  if (excess_lower.size() != n || excess_upper.size() != n) {
    throw std::invalid_argument("excess bounds must be given for every vertex");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (excess_lower[v] > excess_upper[v]) {
      throw std::invalid_argument("excess lower bound exceeds upper bound at " + labels[v]);
    }
  }
  for (const auto& a : arcs) {
    if (a.from >= n || a.to >= n) throw std::invalid_argument("arc endpoint out of range");
    if (a.from == a.to) throw std::invalid_argument("self-loop at " + labels[a.from]);
    if (a.lower > a.upper) {
      throw std::invalid_argument("arc lower bound exceeds upper bound on " + labels[a.from] + " -> " + labels[a.to]);
    }
  }
}

std::optional<std::string> find_bound_violation(const BoundedFlowProblem& problem,
                                                const std::vector<std::int64_t>& flow) {
  if (flow.size() != problem.arcs.size()) return "flow has " + std::to_string(flow.size()) + " values for " +
                                                 std::to_string(problem.arcs.size()) + " arcs";
  for (std::size_t a = 0; a < flow.size(); ++a) {
    const auto& arc = problem.arcs[a];
    if (flow[a] < arc.lower || flow[a] > arc.upper) {
      return "arc " + problem.labels[arc.from] + " -> " + problem.labels[arc.to] + " carries " +
             std::to_string(flow[a]) + " outside [" + std::to_string(arc.lower) + ", " + std::to_string(arc.upper) + "]";
    }
  }
  const auto ex = vertex_excess(problem, flow);
  for (std::size_t v = 0; v < ex.size(); ++v) {
    if (ex[v] < problem.excess_lower[v] || ex[v] > problem.excess_upper[v]) {
      return "excess " + std::to_string(ex[v]) + " at " + problem.labels[v] + " outside [" +
             std::to_string(problem.excess_lower[v]) + ", " + std::to_string(problem.excess_upper[v]) + "]";
    }
  }
  return std::nullopt;
}

double max_bound_violation(const BoundedFlowProblem& problem, const std::vector<double>& flow) {
  auto outside = [](double x, double lo, double hi) { return std::max({0.0, lo - x, x - hi}); };
  double worst = 0.0;
  for (std::size_t a = 0; a < problem.arcs.size(); ++a) {
    const auto& arc = problem.arcs[a];
    worst = std::max(worst, outside(flow[a], static_cast<double>(arc.lower), static_cast<double>(arc.upper)));
  }
  const auto ex = vertex_excess(problem, flow);
  for (std::size_t v = 0; v < ex.size(); ++v) {
    worst = std::max(worst, outside(ex[v], static_cast<double>(problem.excess_lower[v]),
                                    static_cast<double>(problem.excess_upper[v])));
  }
  return worst;
}

ReducedNetwork reduce_to_max_flow(const BoundedFlowProblem& problem) {
  problem.validate();
  const std::size_t n = problem.vertex_count();
  ReducedNetwork net;
  net.balance = n;
  net.source = n + 1;
  net.sink = n + 2;
  net.node_count = n + 3;
  net.excess_lower = problem.excess_lower;
  net.excess_upper = problem.excess_upper;

  // Lower-bound offsetting; a negative lower bound is carried by a reverse arc.
  auto shift = [&](std::size_t from, std::size_t to, std::int64_t amount) {
    net.excess_lower[to] -= amount;
    net.excess_upper[to] -= amount;
    net.excess_lower[from] += amount;
    net.excess_upper[from] += amount;
  };
  for (const auto& a : problem.arcs) {
    if (a.lower >= 0) {
      net.forward.push_back(net.arcs.size());
      net.arcs.push_back({a.from, a.to, a.upper - a.lower});
      net.reverse.push_back(std::nullopt);
      net.offset.push_back(a.lower);
      shift(a.from, a.to, a.lower);
    } else if (a.upper <= 0) {
      // f(u,v) = -g(v,u) with g in [-upper, -lower].
      net.forward.push_back(net.arcs.size());
      net.arcs.push_back({a.to, a.from, a.upper - a.lower});
      net.reverse.push_back(std::nullopt);
      net.offset.push_back(a.upper);
      shift(a.to, a.from, -a.upper);
    } else {
      net.forward.push_back(net.arcs.size());
      net.arcs.push_back({a.from, a.to, a.upper});
      net.reverse.push_back(net.arcs.size());
      net.arcs.push_back({a.to, a.from, -a.lower});
      net.offset.push_back(0);
    }
  }
  for (const auto& a : net.arcs) {
    if (a.capacity < 0) throw std::logic_error("negative capacity after offsetting");
  }

  // Balancing sink, then super-source and super-sink.
  std::int64_t demand = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::int64_t lo = net.excess_lower[v];
    if (lo < 0) {
      net.total_supply += -lo;
      net.arcs.push_back({net.source, v, -lo});
    } else if (lo > 0) {
      demand += lo;
      net.arcs.push_back({v, net.sink, lo});
    }
    if (net.excess_upper[v] > lo) net.arcs.push_back({v, net.balance, net.excess_upper[v] - lo});
  }
  net.balance_demand = net.total_supply - demand;
  if (net.balance_demand > 0) net.arcs.push_back({net.balance, net.sink, net.balance_demand});
  return net;
}

MaxFlow::MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

std::size_t MaxFlow::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  const std::size_t id = edges_.size();
  edges_.push_back({to, capacity});
  initial_.push_back(capacity);
  adj_[from].push_back(id);
  edges_.push_back({from, 0});
  initial_.push_back(0);
  adj_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::bfs(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e : adj_[v]) {
      if (edges_[e].capacity > 0 && level_[edges_[e].to] < 0) {
        level_[edges_[e].to] = level_[v] + 1;
        queue.push(edges_[e].to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t MaxFlow::dfs(std::size_t v, std::size_t sink, std::int64_t pushed) {
  if (v == sink) return pushed;
  for (; next_[v] < adj_[v].size(); ++next_[v]) {
    const std::size_t e = adj_[v][next_[v]];
    const std::size_t to = edges_[e].to;
    if (edges_[e].capacity <= 0 || level_[to] != level_[v] + 1) continue;
    const std::int64_t got = dfs(to, sink, std::min(pushed, edges_[e].capacity));
    if (got > 0) {
      edges_[e].capacity -= got;
      edges_[e ^ 1].capacity += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(std::size_t source, std::size_t sink) {
  std::int64_t total = 0;
  while (bfs(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (std::int64_t pushed = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) total += pushed;
  }
  return total;
}

std::int64_t MaxFlow::flow(std::size_t edge) const { return initial_[edge] - edges_[edge].capacity; }

IntegralFlowResult integral_flow(const BoundedFlowProblem& problem) {
  const ReducedNetwork net = reduce_to_max_flow(problem);
  IntegralFlowResult result;
  result.required = net.total_supply;
  if (net.balance_demand < 0) return result;

  MaxFlow solver(net.node_count);
  std::vector<std::size_t> ids;
  ids.reserve(net.arcs.size());
  for (const auto& a : net.arcs) ids.push_back(solver.add_edge(a.from, a.to, a.capacity));
  result.flow_value = solver.run(net.source, net.sink);
  if (result.flow_value != net.total_supply) return result;

  result.feasible = true;
  result.flow.resize(problem.arcs.size());
  for (std::size_t a = 0; a < problem.arcs.size(); ++a) {
    const std::int64_t g = solver.flow(ids[net.forward[a]]);
    if (problem.arcs[a].upper <= 0 && problem.arcs[a].lower < 0) {
      result.flow[a] = -g + net.offset[a];
    } else {
      result.flow[a] = g + net.offset[a];
      if (net.reverse[a]) result.flow[a] -= solver.flow(ids[*net.reverse[a]]);
    }
  }
  if (auto violation = find_bound_violation(problem, result.flow)) {
    throw std::logic_error("integral flow breaks a bound: " + *violation);
  }
  return result;
}

std::size_t IncidenceNetwork::y_vertex(int color, int region) const {
  return point_count + static_cast<std::size_t>(color - 1) * parts + region;
}

std::size_t IncidenceNetwork::region_vertex(int region) const {
  return point_count + static_cast<std::size_t>(colors) * parts + region;
}

IncidenceNetwork build_network(const ColoredPointSet& ps, double epsilon, const std::vector<ConvexRegion>& regions) {
  if (ps.dimension() != 2) throw std::invalid_argument("incidence networks are built for planar regions only");
  if (regions.empty()) throw std::invalid_argument("at least one region required");
  IncidenceNetwork net;
  net.point_count = ps.size();
  net.colors = ps.dimension();
  net.parts = static_cast<int>(regions.size());
  net.point_color = ps.colors();
  const auto n = static_cast<std::int64_t>(regions.size());
  auto& p = net.problem;

  for (std::size_t x = 0; x < ps.size(); ++x) p.add_vertex("x" + std::to_string(x), -1, -1);
  // Points keep their 0-based input index; colors and parts are 1-based, as in result files.
  for (int i = 1; i <= net.colors; ++i) {
    for (int j = 1; j <= net.parts; ++j) p.add_vertex("y" + std::to_string(i) + "_" + std::to_string(j), 0, 0);
  }
  const auto total = static_cast<std::int64_t>(ps.size());
  for (int j = 0; j < net.parts; ++j) {
    p.add_vertex("C" + std::to_string(j + 1), total / n, (total + n - 1) / n);
  }

  std::vector<ExactRegion> exact;
  exact.reserve(regions.size());
  for (const auto& r : regions) exact.push_back(to_exact(r));
  const Rational eps = to_rational(epsilon);
  for (std::size_t x = 0; x < ps.size(); ++x) {
    const ExactPoint2 center = ps.exact_point2(x);
    bool any = false;
    for (int j = 0; j < net.parts; ++j) {
      if (!ball_meets_region(center, eps, exact[j])) continue;
      p.add_arc(x, net.y_vertex(ps.color(x), j), 0, 1);
      net.incidence.emplace_back(x, j);
      any = true;
    }
    if (!any) throw std::logic_error("the ball of point " + std::to_string(x) + " meets no region");
  }
  net.region_arc.assign(net.colors, std::vector<std::size_t>(net.parts));
  for (int i = 1; i <= net.colors; ++i) {
    const auto count = static_cast<std::int64_t>(ps.color_count(i));
    for (int j = 0; j < net.parts; ++j) {
      net.region_arc[i - 1][j] = p.add_arc(net.y_vertex(i, j), net.region_vertex(j), count / n, (count + n - 1) / n);
    }
  }
  p.validate();
  return net;
}

FractionalFlow fractional_flow(const IncidenceNetwork& network, const BallMeasureFamily& family,
                               const std::vector<ConvexRegion>& regions) {
  FractionalFlow out;
  out.values.assign(network.problem.arcs.size(), 0.0);
  // Point x of color i is the next unseen center of that color, in input order.
  std::vector<Point2> center(network.point_count);
  std::vector<std::size_t> seen(family.colors(), 0);
  for (std::size_t x = 0; x < network.point_count; ++x) {
    const int c = network.point_color[x];
    center[x] = family.color_centers(c).at(seen[c - 1]++);
  }
  for (std::size_t a = 0; a < network.incidence.size(); ++a) {
    const auto [x, j] = network.incidence[a];
    out.values[a] = disk_region_mass(center[x], family.epsilon, regions[j]);
  }
  for (int i = 1; i <= network.colors; ++i) {
    const double share = family.total_mass(i) / network.parts;
    for (int j = 0; j < network.parts; ++j) out.values[network.region_arc[i - 1][j]] = share;
  }
  out.max_violation = max_bound_violation(network.problem, out.values);
  return out;
}

std::vector<int> extract_assignment(const IncidenceNetwork& network, const std::vector<std::int64_t>& flow) {
  std::vector<int> assignment(network.point_count, -1);
  for (std::size_t a = 0; a < network.incidence.size(); ++a) {
    if (flow.at(a) == 0) continue;
    const auto [x, j] = network.incidence[a];
    if (flow[a] != 1 || assignment[x] != -1) {
      throw std::logic_error("point " + std::to_string(x) + " does not send exactly one unit");
    }
    assignment[x] = j;
  }
  for (std::size_t x = 0; x < assignment.size(); ++x) {
    if (assignment[x] < 0) throw std::logic_error("point " + std::to_string(x) + " is unassigned");
  }
  return assignment;
}

void write_network(std::ostream& out, const BoundedFlowProblem& problem) {
  for (const auto& a : problem.arcs) {
    out << problem.labels[a.from] << ' ' << problem.labels[a.to] << ' ' << a.lower << ' ' << a.upper << '\n';
  }
  for (std::size_t v = 0; v < problem.vertex_count(); ++v) {
    out << "# excess " << problem.labels[v] << ' ' << problem.excess_lower[v] << ' ' << problem.excess_upper[v] << '\n';
  }
}

}  // namespace colorpart
