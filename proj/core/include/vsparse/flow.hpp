#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vsparse/graph.hpp"

namespace vsp {

// Single-source commodity. flow[e] > 0 moves from edge(e).u to edge(e).v.
struct Commodity {
  VertexId source = -1;
  std::vector<std::pair<VertexId, Q>> sinks;
  std::vector<Q> flow;
};

struct FlowSolution {
  std::vector<Commodity> commodities;
  // Load that is fixed a priori (e.g. traffic between units of one bucket),
  // added to every edge's load; empty means none.
  std::vector<Q> extra_load;
};

std::vector<Q> edge_loads(const CapGraph& g, const FlowSolution& f);
Q congestion(const CapGraph& g, const FlowSolution& f);
// Exact conservation: net outflow is +sum(sinks) at the source, -amount at
// each sink, 0 elsewhere.
bool conserves(const CapGraph& g, const FlowSolution& f, std::string* why = nullptr);

struct PathFlow {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  Q amount;
};

// Simple source->sink paths carrying the commodity; leftover circulation is
// dropped. Path amounts per sink sum to that sink's demand.
std::vector<PathFlow> decompose_paths(const CapGraph& g, const Commodity& c);

// Rebuild a commodity's flow from paths (signed by traversal direction).
std::vector<Q> paths_to_flow(const CapGraph& g, const std::vector<PathFlow>& paths);

}  // namespace vsp
