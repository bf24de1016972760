#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vsparse/flow.hpp"
#include "vsparse/graph.hpp"

namespace vsp {

// Dinic on integer capacities. Arcs are directed; an undirected edge is an
// arc with equal reverse capacity.
class Dinic {
 public:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  explicit Dinic(int n);
  int add_node();
  int add_arc(int u, int v, std::int64_t cap, std::int64_t rev_cap = 0);
  std::int64_t run(int s, int t, std::int64_t limit = kInf);
  // Restore every arc to its capacity as added (or last set).
  void reset();
  void set_capacity(int arc, std::int64_t cap, std::int64_t rev_cap = 0);
  // Net flow along the arc as added (negative if it runs backwards).
  std::int64_t flow(int arc) const;
  int arc_from(int arc) const { return arcs_[2 * arc + 1].to; }
  int arc_to(int arc) const { return arcs_[2 * arc].to; }
  // Vertices reachable from s in the residual graph (min-cut source side).
  std::vector<char> reachable(int s) const;
  int num_nodes() const { return static_cast<int>(head_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size() / 2); }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    std::int64_t init;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t pushed);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> head_;
  std::vector<int> level_, it_;
};

struct CutCertificate {
  std::vector<char> side;  // 1 = side A
  Q value = 0;
  Q weight_a = 0;  // terminal weight on each side (sparsest-cut use)
  Q weight_b = 0;
  Q sparsity = 0;
  bool infinite = false;         // no cut splits the terminals nontrivially
  bool trivial_cluster = false;  // one-vertex cluster: well-linked at every alpha
  std::string source;            // exact | heuristic | maxflow
};

Q cut_value(const CapGraph& g, const std::vector<char>& side);

struct MaxFlowResult {
  Q value;
  std::vector<Q> flow;  // signed per edge of G
  CutCertificate cut;   // side A contains the sources
};

// Super-source joined to every source, super-sink to every sink.
MaxFlowResult max_flow(const CapGraph& g, std::span<const VertexId> sources,
                       std::span<const VertexId> sinks);
// Terminal sides given by terminal index.
MaxFlowResult min_cut_between(const CapGraph& g, std::span<const int> ta,
                              std::span<const int> tb);

// Paths of a max-flow from the source set to the sink set; integral amounts
// on integral graphs.
std::vector<PathFlow> max_flow_paths(const CapGraph& g, std::span<const VertexId> sources,
                                     std::span<const VertexId> sinks, Q* value = nullptr);

// Common denominator scaling: returns L with cap*L integral for all edges and
// fills scaled; throws InternalError on int64 overflow.
mpz_class scale_capacities(const CapGraph& g, std::vector<std::int64_t>& scaled);

}  // namespace vsp
