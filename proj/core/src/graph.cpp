#include "vsparse/graph.hpp"

#include <algorithm>
#include <numeric>

#include "vsparse/errors.hpp"

namespace vsp {

CapGraph::CapGraph(int n) : adj_(n), term_index_(n, -1) {}

VertexId CapGraph::add_vertex() {
  adj_.emplace_back();
  term_index_.push_back(-1);
  return num_vertices() - 1;
}

EdgeId CapGraph::add_edge(VertexId u, VertexId v, Q cap) {
  if (!valid_vertex(u) || !valid_vertex(v))
    throw InputError("edge endpoint out of range");
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  cap.canonicalize();
  if (cap <= 0) throw InputError("non-positive capacity");
  EdgeId id = num_edges();
  edges_.push_back({u, v, std::move(cap)});
  adj_[u].push_back(id);
  adj_[v].push_back(id);
  return id;
}

void CapGraph::add_terminal(VertexId v) {
  if (!valid_vertex(v)) throw InputError("terminal out of range");
  if (term_index_[v] >= 0) throw InputError("duplicate terminal " + std::to_string(v));
  term_index_[v] = k();
  terminals_.push_back(v);
}

void CapGraph::set_capacity(EdgeId e, Q cap) {
  cap.canonicalize();
  if (cap <= 0) throw InputError("non-positive capacity");
  edges_[e].cap = std::move(cap);
}

Q CapGraph::degree(VertexId v) const {
  Q d = 0;
  for (EdgeId e : adj_[v]) d += edges_[e].cap;
  return d;
}

Q CapGraph::terminal_capacity() const {
  Q c = 0;
  for (VertexId t : terminals_) c += degree(t);
  // an edge between two terminals counts once per endpoint, as in the
  // per-terminal sum the capping rule uses
  return c;
}

bool CapGraph::is_integral() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return is_integer(e.cap); });
}

std::vector<char> vertex_mask(const CapGraph& g, std::span<const VertexId> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (VertexId v : s) {
    if (!g.valid_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v));
    if (in[v]) throw InputError("vertex " + std::to_string(v) + " listed twice");
    in[v] = 1;
  }
  return in;
}

std::vector<EdgeId> out_edges(const CapGraph& g, std::span<const VertexId> s) {
  auto in = vertex_mask(g, s);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (in[g.edge(e).u] != in[g.edge(e).v]) out.push_back(e);
  return out;
}

Q boundary_capacity(const CapGraph& g, std::span<const VertexId> s) {
  Q z = 0;
  for (EdgeId e : out_edges(g, s)) z += g.edge(e).cap;
  return z;
}

std::vector<VertexId> non_terminals(const CapGraph& g) {
  std::vector<VertexId> r;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!g.is_terminal(v)) r.push_back(v);
  return r;
}

std::vector<std::vector<VertexId>> induced_components(const CapGraph& g,
                                                      std::span<const VertexId> s) {
  auto in = vertex_mask(g, s);
  std::vector<VertexId> order(s.begin(), s.end());
  std::sort(order.begin(), order.end());
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<std::vector<VertexId>> comps;
  for (VertexId root : order) {
    if (seen[root]) continue;
    std::vector<VertexId> comp{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (EdgeId e : g.incident(comp[i])) {
        VertexId w = g.other(e, comp[i]);
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool induced_connected(const CapGraph& g, std::span<const VertexId> s) {
  return induced_components(g, s).size() <= 1;
}

namespace {

SubdividedInstance subdivide_impl(const CapGraph& g, std::span<const VertexId> s,
                                  const std::vector<char>* keep) {
  if (s.empty()) throw InputError("subdivide_boundary: empty vertex set");
  auto in = vertex_mask(g, s);
  SubdividedInstance inst;
  inst.num_inner = static_cast<int>(s.size());
  inst.g = CapGraph(inst.num_inner);
  inst.inner_to_orig.assign(s.begin(), s.end());
  std::vector<int> local(g.num_vertices(), -1);
  for (int i = 0; i < inst.num_inner; ++i) local[s[i]] = i;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (in[ed.u] && in[ed.v]) {
      inst.g.add_edge(local[ed.u], local[ed.v], ed.cap);
      inst.edge_to_orig.push_back(e);
    } else if (in[ed.u] != in[ed.v]) {
      if (keep && !(*keep)[e]) continue;
      VertexId inner = in[ed.u] ? local[ed.u] : local[ed.v];
      VertexId t = inst.g.add_vertex();
      inst.g.add_edge(inner, t, ed.cap);
      inst.g.add_terminal(t);
      inst.edge_to_orig.push_back(e);
      inst.terminal_edge.push_back(e);
      inst.attach.push_back(inner);
    }
  }
  return inst;
}

}  // namespace

SubdividedInstance subdivide_boundary(const CapGraph& g, std::span<const VertexId> s) {
  return subdivide_impl(g, s, nullptr);
}

SubdividedInstance subdivide_boundary(const CapGraph& g, std::span<const VertexId> s,
                                      std::span<const EdgeId> boundary_subset) {
  std::vector<char> keep(g.num_edges(), 0);
  for (EdgeId e : boundary_subset) {
    if (e < 0 || e >= g.num_edges()) throw InputError("unknown edge id");
    keep[e] = 1;
  }
  return subdivide_impl(g, s, &keep);
}

Contracted contract(const CapGraph& g, const std::vector<std::vector<VertexId>>& clusters) {
  Contracted out;
  ContractionMap& m = out.map;
  m.cluster_of.assign(g.num_vertices(), -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) throw ContractError("empty cluster");
    for (VertexId v : clusters[c]) {
      if (!g.valid_vertex(v)) throw ContractError("cluster vertex out of range");
      if (m.cluster_of[v] >= 0)
        throw ContractError("clusters overlap at vertex " + std::to_string(v));
      m.cluster_of[v] = static_cast<int>(c);
    }
    auto sorted = clusters[c];
    std::sort(sorted.begin(), sorted.end());
    m.clusters.push_back(std::move(sorted));
  }
  m.supernode.assign(clusters.size(), -1);
  m.vertex_map.assign(g.num_vertices(), -1);
  int n_h = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    int c = m.cluster_of[v];
    if (c < 0) {
      m.vertex_map[v] = n_h++;
      m.preimage.push_back({v});
    } else {
      if (m.supernode[c] < 0) {
        m.supernode[c] = n_h++;
        m.preimage.push_back(m.clusters[c]);
      }
      m.vertex_map[v] = m.supernode[c];
    }
  }
  out.h = CapGraph(n_h);
  for (VertexId t : g.terminals()) out.h.add_terminal(m.vertex_map[t]);
  m.edge_map.assign(g.num_edges(), -1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    VertexId a = m.vertex_map[g.edge(e).u], b = m.vertex_map[g.edge(e).v];
    if (a == b) continue;
    m.edge_map[e] = out.h.add_edge(a, b, g.edge(e).cap);
    m.h_edge_origin.push_back(e);
  }
  return out;
}

UnitExpansion unit_expand(const CapGraph& g, const Q& eps) {
  if (eps <= 0 || eps > 1) throw ParamError("epsilon must lie in (0,1]");
  UnitExpansion ux;
  ux.eps = eps;
  ux.cap_limit = g.terminal_capacity();
  ux.g = CapGraph(g.num_vertices());
  for (const Edge& e : g.edges()) {
    Q c = e.cap;
    // with no terminals nothing is preserved and no cap applies
    if (ux.cap_limit > 0 && c > ux.cap_limit) c = ux.cap_limit;
    ux.capped.push_back(c);
    ux.g.add_edge(e.u, e.v, Q(ceil_div(c / eps)));
  }
  for (VertexId t : g.terminals()) ux.g.add_terminal(t);
  return ux;
}

CapGraph explode(const CapGraph& g) {
  if (!g.is_integral()) throw InputError("explode needs integral capacities");
  CapGraph x(g.num_vertices());
  for (const Edge& e : g.edges()) {
    auto mult = to_int64(e.cap);
    for (std::int64_t i = 0; i < mult; ++i) x.add_edge(e.u, e.v, 1);
  }
  for (VertexId t : g.terminals()) x.add_terminal(t);
  return x;
}

}  // namespace vsp
