#include "vsparse/cut_sparsifier.hpp"

#include "vsparse/errors.hpp"
#include "vsparse/maxflow.hpp"

namespace vsp {

CutSparsifier build_cut_sparsifier_unit(const CapGraph& g, const CutBuildOptions& opt) {
  if (!g.is_integral()) throw ParamError("unit cut sparsifier needs integral capacities");
  CutSparsifier out;
  out.unit_graph = g;
  out.cap_limit = g.terminal_capacity();
  std::vector<std::vector<VertexId>> clusters;
  DecompOptions dopt;
  dopt.cut = opt.cut;
  for (const auto& comp : induced_components(g, non_terminals(g))) {
    auto d = strong_decompose(g, comp, dopt);
    for (const auto& c : d.clusters) clusters.push_back(c.vertices);
    out.decompositions.push_back(std::move(d));
  }
  auto con = contract(g, clusters);
  out.h = std::move(con.h);
  out.map = std::move(con.map);
  return out;
}

CutSparsifier build_cut_sparsifier(const CapGraph& g, const Q& eps_prime, const CutBuildOptions& opt) {
  if (eps_prime <= 0 || eps_prime > 1) throw ParamError("epsilon must lie in (0,1]");
  for (const Edge& e : g.edges())
    if (e.cap < 1) throw ParamError("capacities must be at least 1");
  Q eps = eps_prime / 3;
  auto ux = unit_expand(g, eps);
  CutSparsifier out = build_cut_sparsifier_unit(ux.g, opt);
  for (EdgeId e = 0; e < out.h.num_edges(); ++e) out.h.set_capacity(e, out.h.edge(e).cap * eps);
  out.claimed_q = 3 + eps_prime;
  out.eps_input = eps_prime;
  out.eps_internal = eps;
  out.cap_limit = ux.cap_limit;
  return out;
}

LiftedCut lift_cut(const CapGraph& g, const ContractionMap& m, const std::vector<char>& g_side) {
  LiftedCut r;
  r.g_side = g_side;
  r.original = cut_value(g, g_side);
  std::vector<char>& side = r.g_side;
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    const auto& members = m.clusters[c];
    Q ex = 0, ey = 0, exy = 0, eyx = 0, inner = 0;
    for (VertexId u : members) {
      for (EdgeId e : g.incident(u)) {
        VertexId v = g.other(e, u);
        const Q& cap = g.edge(e).cap;
        if (m.cluster_of[v] == static_cast<int>(c)) {
          if (u < v && side[u] != side[v]) inner += cap;
          continue;
        }
        if (side[u] && side[v])
          ex += cap;
        else if (!side[u] && !side[v])
          ey += cap;
        else if (side[u])
          exy += cap;
        else
          eyx += cap;
      }
    }
    LiftStep st;
    st.cluster = static_cast<int>(c);
    st.removed = inner;
    st.to_x = ex + exy > ey + eyx;
    st.added = st.to_x ? ey : ex;
    for (VertexId u : members) side[u] = st.to_x;
    r.steps.push_back(st);
  }
  r.lifted = cut_value(g, side);
  r.h_side.assign(m.preimage.size(), 0);
  for (std::size_t h = 0; h < m.preimage.size(); ++h) r.h_side[h] = side[m.preimage[h][0]];
  return r;
}

std::vector<char> project_cut(const ContractionMap& m, const std::vector<char>& h_side) {
  std::vector<char> side(m.vertex_map.size(), 0);
  for (std::size_t v = 0; v < m.vertex_map.size(); ++v) side[v] = h_side[m.vertex_map[v]];
  return side;
}

}  // namespace vsp
