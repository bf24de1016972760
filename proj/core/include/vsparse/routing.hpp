#pragma once

#include <string>
#include <vector>

#include "vsparse/demand.hpp"
#include "vsparse/flow.hpp"
#include "vsparse/graph.hpp"

namespace vsp {

struct VertexDemand {
  VertexId a;
  VertexId b;
  Q amount;
};

struct RoutingOptions {
  enum class Method { Auto, Exact, Float, Mwu };
  Method method = Method::Auto;
  double delta = 1e-6;
  // Auto uses the rational simplex directly below this many LP variables.
  int exact_var_limit = 200;
  // Float results whose certified gap exceeds delta fall back to the
  // rational simplex up to this size.
  int fallback_var_limit = 4000;
};

struct RoutingResult {
  bool infinite = false;  // some demand joins disconnected vertices
  Q eta = 0;              // exact congestion of `flow`
  Q lower = 0;            // certified lower bound on the optimum
  FlowSolution flow;
  std::string method;
  bool certified() const;  // eta <= lower * (1 + delta) was established
  double delta = 0;
};

// Minimum-congestion concurrent flow. Each unordered pair {a,b} with demand d
// ships d units between a and b. Commodities are grouped by their smaller
// endpoint.
RoutingResult route_demands(const CapGraph& g, const std::vector<VertexDemand>& demands,
                            const RoutingOptions& opt = {});
RoutingResult min_congestion_routing(const CapGraph& g, const DemandSet& d,
                                     const RoutingOptions& opt = {});

// Every demand on a hop-count shortest path (BFS tree per source). Exact and
// feasible but not optimal.
FlowSolution shortest_path_routing(const CapGraph& g, const std::vector<VertexDemand>& demands);

// Weak duality: for lengths l >= 0, eta >= sum d*dist_l / sum c*l.
Q length_lower_bound(const CapGraph& g, const std::vector<VertexDemand>& demands,
                     const std::vector<Q>& lengths);

// Demand list of a DemandSet on G's terminal vertices.
std::vector<VertexDemand> vertex_demands(const CapGraph& g, const DemandSet& d);

// Nearest fraction with denominator <= max_den (continued fractions).
Q approx_rational(double x, long max_den = 1'000'000);

}  // namespace vsp
