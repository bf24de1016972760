#include "vsparse/maxflow.hpp"

#include <algorithm>
#include <queue>

#include "vsparse/errors.hpp"

namespace vsp {

Dinic::Dinic(int n) : head_(n) {}

int Dinic::add_node() {
  head_.emplace_back();
  return num_nodes() - 1;
}

int Dinic::add_arc(int u, int v, std::int64_t cap, std::int64_t rev_cap) {
  int id = num_arcs();
  head_[u].push_back(2 * id);
  arcs_.push_back({v, cap, cap});
  head_[v].push_back(2 * id + 1);
  arcs_.push_back({u, rev_cap, rev_cap});
  return id;
}

bool Dinic::bfs(int s, int t) {
  level_.assign(head_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int a : head_[v]) {
      if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
        level_[arcs_[a].to] = level_[v] + 1;
        q.push(arcs_[a].to);
      }
    }
  }
  return level_[t] >= 0;
}

std::int64_t Dinic::dfs(int v, int t, std::int64_t pushed) {
  if (v == t || pushed == 0) return pushed;
  for (int& i = it_[v]; i < static_cast<int>(head_[v].size()); ++i) {
    int a = head_[v][i];
    int w = arcs_[a].to;
    if (level_[w] != level_[v] + 1 || arcs_[a].cap == 0) continue;
    std::int64_t got = dfs(w, t, std::min(pushed, arcs_[a].cap));
    if (got > 0) {
      arcs_[a].cap -= got;
      arcs_[a ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t Dinic::run(int s, int t, std::int64_t limit) {
  std::int64_t total = 0;
  while (total < limit && bfs(s, t)) {
    it_.assign(head_.size(), 0);
    while (total < limit) {
      std::int64_t got = dfs(s, t, limit - total);
      if (got == 0) break;
      total += got;
    }
  }
  return total;
}

void Dinic::reset() {
  for (Arc& a : arcs_) a.cap = a.init;
}

void Dinic::set_capacity(int arc, std::int64_t cap, std::int64_t rev_cap) {
  arcs_[2 * arc].cap = arcs_[2 * arc].init = cap;
  arcs_[2 * arc + 1].cap = arcs_[2 * arc + 1].init = rev_cap;
}

std::int64_t Dinic::flow(int arc) const { return arcs_[2 * arc].init - arcs_[2 * arc].cap; }

std::vector<char> Dinic::reachable(int s) const {
  std::vector<char> seen(head_.size(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a : head_[v]) {
      if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
        seen[arcs_[a].to] = 1;
        stack.push_back(arcs_[a].to);
      }
    }
  }
  return seen;
}

Q cut_value(const CapGraph& g, const std::vector<char>& side) {
  Q v = 0;
  for (const Edge& e : g.edges())
    if (side[e.u] != side[e.v]) v += e.cap;
  return v;
}

mpz_class scale_capacities(const CapGraph& g, std::vector<std::int64_t>& scaled) {
  mpz_class l = 1;
  for (const Edge& e : g.edges()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.cap.get_den_mpz_t());
  scaled.clear();
  mpz_class total = 0;
  for (const Edge& e : g.edges()) {
    mpz_class c = e.cap.get_num() * (l / e.cap.get_den());
    total += c;
    if (!c.fits_slong_p()) throw InternalError("capacity overflows 64-bit flow arithmetic");
    scaled.push_back(c.get_si());
  }
  if (total >= mpz_class(Dinic::kInf)) throw InternalError("total capacity overflows 64-bit flow arithmetic");
  return l;
}

MaxFlowResult max_flow(const CapGraph& g, std::span<const VertexId> sources,
                       std::span<const VertexId> sinks) {
  auto src = vertex_mask(g, sources);
  auto snk = vertex_mask(g, sinks);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (src[v] && snk[v]) throw InputError("source and sink sets overlap");
  std::vector<std::int64_t> cap;
  mpz_class l = scale_capacities(g, cap);
  int n = g.num_vertices();
  Dinic d(n + 2);
  int s = n, t = n + 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e) d.add_arc(g.edge(e).u, g.edge(e).v, cap[e], cap[e]);
  for (VertexId v : sources) d.add_arc(s, v, Dinic::kInf);
  for (VertexId v : sinks) d.add_arc(v, t, Dinic::kInf);
  std::int64_t f = d.run(s, t);
  MaxFlowResult r;
  r.value = Q(mpz_class(f), l);
  r.value.canonicalize();
  r.flow.resize(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    r.flow[e] = Q(mpz_class(d.flow(e)), l);
    r.flow[e].canonicalize();
  }
  auto reach = d.reachable(s);
  r.cut.side.assign(reach.begin(), reach.begin() + n);
  r.cut.value = cut_value(g, r.cut.side);
  r.cut.source = "maxflow";
  if (r.cut.value != r.value) throw InternalError("max-flow/min-cut duality check failed");
  return r;
}

MaxFlowResult min_cut_between(const CapGraph& g, std::span<const int> ta,
                              std::span<const int> tb) {
  if (ta.empty() || tb.empty()) throw InputError("min_cut_between needs nonempty sides");
  std::vector<VertexId> a, b;
  for (int i : ta) {
    if (i < 0 || i >= g.k()) throw InputError("terminal index out of range");
    a.push_back(g.terminals()[i]);
  }
  for (int i : tb) {
    if (i < 0 || i >= g.k()) throw InputError("terminal index out of range");
    b.push_back(g.terminals()[i]);
  }
  return max_flow(g, a, b);
}

std::vector<PathFlow> max_flow_paths(const CapGraph& g, std::span<const VertexId> sources,
                                     std::span<const VertexId> sinks, Q* value) {
  auto r = max_flow(g, sources, sinks);
  if (value) *value = r.value;
  // extend G by a super source and sink so the flow becomes one commodity
  CapGraph ext = g;
  VertexId s = ext.add_vertex(), t = ext.add_vertex();
  Commodity c;
  c.source = s;
  c.flow = r.flow;
  std::vector<Q> net(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    net[g.edge(e).u] -= r.flow[e];
    net[g.edge(e).v] += r.flow[e];
  }
  // net[v] > 0: v absorbs flow (a sink); < 0: v emits it (a source)
  for (VertexId v : sources) {
    if (net[v] < 0) {
      ext.add_edge(s, v, -net[v]);
      c.flow.push_back(-net[v]);
    }
  }
  Q total = 0;
  for (VertexId v : sinks) {
    if (net[v] > 0) {
      ext.add_edge(v, t, net[v]);
      c.flow.push_back(net[v]);
      total += net[v];
    }
  }
  if (total == 0) return {};
  c.sinks.push_back({t, total});
  auto paths = decompose_paths(ext, c);
  for (PathFlow& p : paths) {
    p.edges = std::vector<EdgeId>(p.edges.begin() + 1, p.edges.end() - 1);
    p.vertices = std::vector<VertexId>(p.vertices.begin() + 1, p.vertices.end() - 1);
  }
  return paths;
}

}  // namespace vsp
