#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsparse/rational.hpp"

namespace vsp {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u;
  VertexId v;
  Q cap;
};

// Undirected capacitated multigraph. Vertices are 0..n-1, edges 0..m-1 in
// insertion order. An integral capacity on a unit-mode graph stands for that
// many parallel unit edges (a bucket); every counting routine treats it so.
class CapGraph {
 public:
  CapGraph() = default;
  explicit CapGraph(int n);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, Q cap);
  void add_terminal(VertexId v);
  void set_capacity(EdgeId e, Q cap);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& incident(VertexId v) const { return adj_[v]; }
  VertexId other(EdgeId e, VertexId v) const {
    return edges_[e].u == v ? edges_[e].v : edges_[e].u;
  }

  const std::vector<VertexId>& terminals() const { return terminals_; }
  int k() const { return static_cast<int>(terminals_.size()); }
  bool is_terminal(VertexId v) const { return term_index_[v] >= 0; }
  int terminal_index(VertexId v) const { return term_index_[v]; }

  // Sum of capacities at v; for unit graphs the multigraph degree.
  Q degree(VertexId v) const;
  // C: total capacity incident on terminals.
  Q terminal_capacity() const;
  // Every capacity an integer (bucket multiplicity semantics).
  bool is_integral() const;
  bool valid_vertex(VertexId v) const { return v >= 0 && v < num_vertices(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<VertexId> terminals_;
  std::vector<int> term_index_;
};

// Membership mask for a vertex subset; throws InputError on unknown ids or
// duplicates.
std::vector<char> vertex_mask(const CapGraph& g, std::span<const VertexId> s);

std::vector<EdgeId> out_edges(const CapGraph& g, std::span<const VertexId> s);
Q boundary_capacity(const CapGraph& g, std::span<const VertexId> s);
std::vector<VertexId> non_terminals(const CapGraph& g);

// Connected components of G[S]; each sorted, ordered by smallest member.
std::vector<std::vector<VertexId>> induced_components(const CapGraph& g,
                                                      std::span<const VertexId> s);
bool induced_connected(const CapGraph& g, std::span<const VertexId> s);

// G_S: the vertices of S (first, in the given order) plus one degree-1
// terminal t_e per boundary edge e, attached to e's endpoint in S with e's
// capacity.
struct SubdividedInstance {
  CapGraph g;
  int num_inner = 0;
  std::vector<VertexId> inner_to_orig;  // G_S vertex < num_inner -> G vertex
  std::vector<EdgeId> terminal_edge;    // terminal index -> boundary edge of G
  std::vector<EdgeId> edge_to_orig;     // G_S edge -> G edge
  std::vector<VertexId> attach;         // terminal index -> inner vertex
};

SubdividedInstance subdivide_boundary(const CapGraph& g, std::span<const VertexId> s);
// Same, but only the listed boundary edges become terminals; the others are
// dropped.
SubdividedInstance subdivide_boundary(const CapGraph& g, std::span<const VertexId> s,
                                      std::span<const EdgeId> boundary_subset);

struct ContractionMap {
  std::vector<std::vector<VertexId>> clusters;  // sorted members
  std::vector<VertexId> supernode;              // cluster -> H vertex
  std::vector<VertexId> vertex_map;             // G vertex -> H vertex
  std::vector<EdgeId> edge_map;                 // G edge -> H edge, -1 if inside a cluster
  std::vector<EdgeId> h_edge_origin;            // H edge -> G edge
  std::vector<std::vector<VertexId>> preimage;  // H vertex -> G vertices
  std::vector<int> cluster_of;                  // G vertex -> cluster or -1
};

struct Contracted {
  CapGraph h;
  ContractionMap map;
};

// H vertices are numbered in order of their smallest G vertex; terminals keep
// G's terminal order. Overlapping or empty clusters raise ContractError.
Contracted contract(const CapGraph& g, const std::vector<std::vector<VertexId>>& clusters);

// Cap every capacity at C, then replace each edge by ceil(c/eps) unit
// parallel edges. Buckets keep the edge id; cap holds the multiplicity.
struct UnitExpansion {
  CapGraph g;
  Q eps;
  Q cap_limit;  // C of the input graph
  std::vector<Q> capped;
};
UnitExpansion unit_expand(const CapGraph& g, const Q& eps);

// Explicit parallel-edge form of an integral graph (test oracle).
CapGraph explode(const CapGraph& g);

}  // namespace vsp
