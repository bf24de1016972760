#include "vsparse/routing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "vsparse/errors.hpp"
#include "vsparse/lp.hpp"

namespace vsp {

namespace {

struct Group {
  VertexId source;
  std::vector<std::pair<VertexId, Q>> sinks;
};

std::vector<Group> group_by_source(const std::vector<VertexDemand>& demands) {
  std::map<VertexId, std::map<VertexId, Q>> by;
  for (const auto& d : demands) {
    if (d.amount == 0) continue;
    if (d.a == d.b) throw InputError("demand from a vertex to itself");
    VertexId s = std::min(d.a, d.b), t = std::max(d.a, d.b);
    by[s][t] += d.amount;
  }
  std::vector<Group> out;
  for (auto& [s, m] : by) {
    Group gr{s, {}};
    for (auto& [t, a] : m) gr.sinks.emplace_back(t, a);
    out.push_back(std::move(gr));
  }
  return out;
}

std::vector<int> component_ids(const CapGraph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  int c = 0;
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (comp[r] >= 0) continue;
    std::vector<VertexId> st{r};
    comp[r] = c;
    while (!st.empty()) {
      VertexId v = st.back();
      st.pop_back();
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (comp[w] < 0) {
          comp[w] = c;
          st.push_back(w);
        }
      }
    }
    ++c;
  }
  return comp;
}

// Variable layout for the edge formulation.
struct Layout {
  std::vector<std::vector<int>> var;  // [commodity][edge] -> index of f+ (f- is +1), -1 if absent
  std::vector<int> cap_row_edge;      // capacity row -> edge
  int lambda = 0;
  int num_vars = 0;
};

template <class T>
LpProblem<T> build_lp(const CapGraph& g, const std::vector<Group>& groups,
                      const std::vector<int>& comp, Layout& lay, T (*conv)(const Q&)) {
  LpProblem<T> lp;
  int nv = 0;
  lay.var.assign(groups.size(), std::vector<int>(g.num_edges(), -1));
  std::vector<char> used(g.num_edges(), 0);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    int c = comp[groups[i].source];
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (comp[g.edge(e).u] != c) continue;
      lay.var[i][e] = nv;
      nv += 2;
      used[e] = 1;
    }
  }
  lay.lambda = nv++;
  lay.num_vars = nv;
  lp.num_vars = nv;
  lp.cost.assign(nv, T(0));
  lp.cost[lay.lambda] = T(1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Group& gr = groups[i];
    int c = comp[gr.source];
    std::map<VertexId, Q> supply;
    for (const auto& [t, a] : gr.sinks) supply[t] -= a;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (comp[v] != c || v == gr.source) continue;  // source row is implied
      typename LpProblem<T>::Row row;
      row.sense = RowSense::EQ;
      for (EdgeId e : g.incident(v)) {
        int x = lay.var[i][e];
        T sgn = g.edge(e).u == v ? T(1) : T(-1);
        row.coef.emplace_back(x, sgn);
        row.coef.emplace_back(x + 1, T(-sgn));
      }
      auto it = supply.find(v);
      row.rhs = it == supply.end() ? T(0) : conv(it->second);
      if (row.coef.empty()) continue;
      lp.rows.push_back(std::move(row));
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!used[e]) continue;
    typename LpProblem<T>::Row row;
    row.sense = RowSense::LE;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      int x = lay.var[i][e];
      if (x < 0) continue;
      row.coef.emplace_back(x, T(1));
      row.coef.emplace_back(x + 1, T(1));
    }
    row.coef.emplace_back(lay.lambda, T(-conv(g.edge(e).cap)));
    row.rhs = T(0);
    lay.cap_row_edge.push_back(e);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

Q q_identity(const Q& q) { return q; }
double q_to_double(const Q& q) { return q.get_d(); }

FlowSolution empty_solution(const CapGraph& g, const std::vector<Group>& groups) {
  FlowSolution f;
  for (const Group& gr : groups) {
    Commodity c;
    c.source = gr.source;
    c.sinks = gr.sinks;
    c.flow.assign(g.num_edges(), Q(0));
    f.commodities.push_back(std::move(c));
  }
  return f;
}

RoutingResult solve_exact(const CapGraph& g, const std::vector<Group>& groups,
                          const std::vector<int>& comp) {
  Layout lay;
  auto lp = build_lp<Q>(g, groups, comp, lay, &q_identity);
  auto sol = solve_lp_exact(lp);
  if (sol.status != LpStatus::Optimal) throw InternalError("exact routing LP did not solve");
  RoutingResult r;
  r.flow = empty_solution(g, groups);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (int x = lay.var[i][e]; x >= 0) r.flow.commodities[i].flow[e] = sol.x[x] - sol.x[x + 1];
  r.eta = congestion(g, r.flow);
  if (r.eta != sol.objective) {
    // the LP may leave slack in lambda-irrelevant f+/f- pairs; both values
    // are exact, and the flow's congestion can only be <= lambda
    if (r.eta > sol.objective) throw InternalError("exact LP flow exceeds its objective");
  }
  r.lower = r.eta;
  r.method = "exact-simplex";
  return r;
}

// Greedy path decomposition of a float flow into at most one path set per
// sink; returns paths with double amounts.
struct FPath {
  VertexId sink;
  std::vector<EdgeId> edges;
  std::vector<VertexId> verts;
  double amount;
};

std::vector<FPath> float_paths(const CapGraph& g, VertexId source,
                               const std::vector<std::pair<VertexId, Q>>& sinks,
                               std::vector<double> f, double tol) {
  std::map<VertexId, double> need;
  for (const auto& [t, a] : sinks) need[t] = a.get_d();
  std::vector<FPath> out;
  std::vector<int> seen(g.num_vertices(), -1);
  std::vector<EdgeId> via(g.num_vertices(), -1);
  int stamp = 0;
  for (int guard = 0; guard < 4 * g.num_edges() + 4 * static_cast<int>(sinks.size()) + 8;
       ++guard) {
    ++stamp;
    // BFS so paths are short
    std::queue<VertexId> q;
    q.push(source);
    seen[source] = stamp;
    VertexId hit = -1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      if (v != source) {
        auto it = need.find(v);
        if (it != need.end() && it->second > tol) {
          hit = v;
          break;
        }
      }
      for (EdgeId e : g.incident(v)) {
        bool fwd = g.edge(e).u == v;
        double amt = fwd ? f[e] : -f[e];
        if (amt <= tol) continue;
        VertexId w = g.other(e, v);
        if (seen[w] == stamp) continue;
        seen[w] = stamp;
        via[w] = e;
        q.push(w);
      }
    }
    if (hit < 0) break;
    FPath p;
    p.sink = hit;
    double amount = need[hit];
    for (VertexId v = hit; v != source;) {
      EdgeId e = via[v];
      amount = std::min(amount, std::fabs(f[e]));
      p.edges.push_back(e);
      p.verts.push_back(v);
      v = g.other(e, v);
    }
    p.verts.push_back(source);
    std::reverse(p.edges.begin(), p.edges.end());
    std::reverse(p.verts.begin(), p.verts.end());
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
      EdgeId e = p.edges[i];
      f[e] += g.edge(e).u == p.verts[i] ? -amount : amount;
    }
    need[hit] -= amount;
    p.amount = amount;
    out.push_back(std::move(p));
  }
  return out;
}

// BFS path from s to t (hop count), or empty if unreachable.
bool bfs_path(const CapGraph& g, VertexId s, VertexId t, std::vector<EdgeId>& edges,
              std::vector<VertexId>& verts) {
  std::vector<EdgeId> via(g.num_vertices(), -1);
  std::vector<char> seen(g.num_vertices(), 0);
  std::queue<VertexId> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    if (v == t) break;
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.other(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        via[w] = e;
        q.push(w);
      }
    }
  }
  if (!seen[t]) return false;
  edges.clear();
  verts.clear();
  for (VertexId v = t; v != s;) {
    edges.push_back(via[v]);
    verts.push_back(v);
    v = g.other(via[v], v);
  }
  verts.push_back(s);
  std::reverse(edges.begin(), edges.end());
  std::reverse(verts.begin(), verts.end());
  return true;
}

// Exact flow from per-sink float paths: amounts renormalised to the demand.
FlowSolution exact_from_paths(const CapGraph& g, const std::vector<Group>& groups,
                              const std::vector<std::vector<FPath>>& paths) {
  FlowSolution f = empty_solution(g, groups);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::map<VertexId, std::vector<const FPath*>> by_sink;
    for (const FPath& p : paths[i]) by_sink[p.sink].push_back(&p);
    for (const auto& [t, d] : groups[i].sinks) {
      std::vector<PathFlow> pf;
      Q total = 0;
      for (const FPath* p : by_sink[t]) {
        Q a = approx_rational(p->amount);
        if (a <= 0) continue;
        pf.push_back({p->verts, p->edges, a});
        total += a;
      }
      if (pf.empty()) {
        PathFlow p;
        bfs_path(g, groups[i].source, t, p.edges, p.vertices);
        p.amount = d;
        pf.push_back(std::move(p));
        total = d;
      }
      for (PathFlow& p : pf) p.amount = p.amount * d / total;
      auto add = paths_to_flow(g, pf);
      for (EdgeId e = 0; e < g.num_edges(); ++e) f.commodities[i].flow[e] += add[e];
    }
  }
  return f;
}

std::vector<VertexDemand> flatten(const std::vector<Group>& groups) {
  std::vector<VertexDemand> out;
  for (const auto& gr : groups)
    for (const auto& [t, a] : gr.sinks) out.push_back({gr.source, t, a});
  return out;
}

bool within(const Q& ub, const Q& lb, double delta) {
  return ub <= lb * (Q(1) + approx_rational(delta, 1'000'000'000L));
}

RoutingResult solve_float(const CapGraph& g, const std::vector<Group>& groups,
                          const std::vector<int>& comp, const RoutingOptions& opt) {
  Layout lay;
  auto lp = build_lp<double>(g, groups, comp, lay, &q_to_double);
  auto sol = solve_lp_float(lp, 1e-9);
  RoutingResult r;
  r.method = "float-simplex";
  if (sol.status != LpStatus::Optimal) {
    r.eta = -1;
    return r;
  }
  std::vector<std::vector<FPath>> paths(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    std::vector<double> f(g.num_edges(), 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (int x = lay.var[i][e]; x >= 0) f[e] = sol.x[x] - sol.x[x + 1];
    paths[i] = float_paths(g, groups[i].source, groups[i].sinks, f, 1e-11);
  }
  r.flow = exact_from_paths(g, groups, paths);
  r.eta = congestion(g, r.flow);
  std::vector<Q> len(g.num_edges(), 0);
  for (std::size_t row = 0; row < lay.cap_row_edge.size(); ++row) {
    double y = -sol.dual[lp.rows.size() - lay.cap_row_edge.size() + row];
    if (y > 0) len[lay.cap_row_edge[row]] = approx_rational(y);
  }
  r.lower = length_lower_bound(g, flatten(groups), len);
  (void)opt;
  return r;
}

// Garg-Koenemann style multiplicative weights for maximum concurrent flow.
RoutingResult solve_mwu(const CapGraph& g, const std::vector<Group>& groups, double delta) {
  // tiny eps makes the initial lengths underflow; the result is evaluated
  // exactly either way, so only the certified gap suffers
  double eps = std::clamp(delta, 0.02, 0.1);
  int m = g.num_edges();
  std::vector<double> cap(m), len(m);
  for (EdgeId e = 0; e < m; ++e) cap[e] = g.edge(e).cap.get_d();
  double d0 = std::max((1 + eps) * std::pow((1 + eps) * m, -1.0 / eps), 1e-290);
  for (EdgeId e = 0; e < m; ++e) len[e] = d0 / cap[e];
  std::vector<std::vector<FPath>> acc(groups.size());
  std::vector<double> best_len = len;
  double best_lb = 0;
  auto dual_obj = [&] {
    double s = 0;
    for (EdgeId e = 0; e < m; ++e) s += cap[e] * len[e];
    return s;
  };
  auto dijkstra = [&](VertexId s, std::vector<double>& dist, std::vector<EdgeId>& via) {
    dist.assign(g.num_vertices(), INFINITY);
    via.assign(g.num_vertices(), -1);
    using P = std::pair<double, VertexId>;
    std::priority_queue<P, std::vector<P>, std::greater<P>> pq;
    dist[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (dist[v] + len[e] < dist[w]) {
          dist[w] = dist[v] + len[e];
          via[w] = e;
          pq.push({dist[w], w});
        }
      }
    }
  };
  std::vector<double> dist;
  std::vector<EdgeId> via;
  long phases = 0;
  while (dual_obj() < 1 && phases < 200000) {
    ++phases;
    // lower bound from current lengths
    double num = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      dijkstra(groups[i].source, dist, via);
      for (const auto& [t, a] : groups[i].sinks) num += a.get_d() * dist[t];
    }
    double lb = num / dual_obj();
    if (lb > best_lb) {
      best_lb = lb;
      best_len = len;
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (const auto& [t, a] : groups[i].sinks) {
        double rem = a.get_d();
        while (rem > 1e-15 && dual_obj() < 1) {
          dijkstra(groups[i].source, dist, via);
          FPath p;
          p.sink = t;
          double bottleneck = rem;
          for (VertexId v = t; v != groups[i].source;) {
            EdgeId e = via[v];
            bottleneck = std::min(bottleneck, cap[e]);
            p.edges.push_back(e);
            p.verts.push_back(v);
            v = g.other(e, v);
          }
          p.verts.push_back(groups[i].source);
          std::reverse(p.edges.begin(), p.edges.end());
          std::reverse(p.verts.begin(), p.verts.end());
          p.amount = bottleneck;
          for (EdgeId e : p.edges) len[e] *= 1 + eps * bottleneck / cap[e];
          rem -= bottleneck;
          acc[i].push_back(std::move(p));
        }
      }
    }
  }
  RoutingResult r;
  r.method = "mwu";
  r.flow = exact_from_paths(g, groups, acc);
  r.eta = congestion(g, r.flow);
  std::vector<Q> ql(m);
  for (EdgeId e = 0; e < m; ++e) ql[e] = Q(best_len[e]);
  r.lower = length_lower_bound(g, flatten(groups), ql);
  return r;
}

}  // namespace

bool RoutingResult::certified() const {
  if (infinite) return true;
  return within(eta, lower, delta);
}

Q approx_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw InternalError("approx_rational of a non-finite value");
  bool neg = x < 0;
  double v = std::fabs(x);
  // continued fraction convergents
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  Q best = Q(v);
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(frac);
    if (a > 1e15) break;
    mpz_class ai(static_cast<long>(a));
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Q cand(p1, q1);
    cand.canonicalize();
    best = cand;
    if (std::fabs(cand.get_d() - v) <= 1e-15 * std::max(1.0, v)) break;
    double rest = frac - a;
    if (rest < 1e-18) break;
    frac = 1.0 / rest;
  }
  if (std::fabs(best.get_d() - v) > 1e-9 * std::max(1.0, v)) best = Q(v);
  return neg ? Q(-best) : best;
}

Q length_lower_bound(const CapGraph& g, const std::vector<VertexDemand>& demands,
                     const std::vector<Q>& lengths) {
  Q denom = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) denom += g.edge(e).cap * lengths[e];
  if (denom == 0) return 0;
  std::map<VertexId, std::vector<std::pair<VertexId, Q>>> by;
  for (const auto& d : demands) by[d.a].push_back({d.b, d.amount});
  Q num = 0;
  int n = g.num_vertices();
  for (const auto& [s, list] : by) {
    // O(n^2) Dijkstra in exact arithmetic
    std::vector<Q> dist(n);
    std::vector<char> has(n, 0), done(n, 0);
    dist[s] = 0;
    has[s] = 1;
    for (int it = 0; it < n; ++it) {
      int v = -1;
      for (int u = 0; u < n; ++u)
        if (has[u] && !done[u] && (v < 0 || dist[u] < dist[v])) v = u;
      if (v < 0) break;
      done[v] = 1;
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        Q nd = dist[v] + lengths[e];
        if (!has[w] || nd < dist[w]) {
          dist[w] = nd;
          has[w] = 1;
        }
      }
    }
    for (const auto& [t, a] : list) {
      if (!has[t]) return 0;
      num += a * dist[t];
    }
  }
  return num / denom;
}

std::vector<VertexDemand> vertex_demands(const CapGraph& g, const DemandSet& d) {
  if (d.k() != g.k()) throw InputError("demand set terminal count does not match the graph");
  std::vector<VertexDemand> out;
  for (const auto& [a, b, v] : d.pairs()) out.push_back({g.terminals()[a], g.terminals()[b], v});
  return out;
}

FlowSolution shortest_path_routing(const CapGraph& g, const std::vector<VertexDemand>& demands) {
  auto groups = group_by_source(demands);
  FlowSolution f = empty_solution(g, groups);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    VertexId s = groups[i].source;
    std::vector<EdgeId> via(g.num_vertices(), -1);
    std::vector<char> seen(g.num_vertices(), 0);
    std::queue<VertexId> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          via[w] = e;
          q.push(w);
        }
      }
    }
    for (const auto& [t, a] : groups[i].sinks) {
      if (!seen[t]) throw InputError("shortest_path_routing: disconnected demand");
      for (VertexId v = t; v != s;) {
        EdgeId e = via[v];
        VertexId u = g.other(e, v);
        // flow runs u -> v
        if (g.edge(e).u == u)
          f.commodities[i].flow[e] += a;
        else
          f.commodities[i].flow[e] -= a;
        v = u;
      }
    }
  }
  return f;
}

RoutingResult route_demands(const CapGraph& g, const std::vector<VertexDemand>& demands,
                            const RoutingOptions& opt) {
  auto groups = group_by_source(demands);
  RoutingResult r;
  r.delta = opt.delta;
  auto comp = component_ids(g);
  for (const auto& gr : groups)
    for (const auto& [t, a] : gr.sinks)
      if (comp[gr.source] != comp[t]) {
        r.infinite = true;
        r.method = "disconnected";
        return r;
      }
  if (groups.empty()) {
    r.method = "empty";
    return r;
  }
  int nvars = 1;
  for (const auto& gr : groups)
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (comp[g.edge(e).u] == comp[gr.source]) nvars += 2;
  using M = RoutingOptions::Method;
  M method = opt.method;
  if (method == M::Auto) method = nvars <= opt.exact_var_limit ? M::Exact : M::Float;
  if (method == M::Exact) {
    auto res = solve_exact(g, groups, comp);
    res.delta = opt.delta;
    return res;
  }
  if (method == M::Mwu) {
    auto res = solve_mwu(g, groups, opt.delta);
    res.delta = opt.delta;
    return res;
  }
  auto res = solve_float(g, groups, comp, opt);
  res.delta = opt.delta;
  if (res.eta >= 0 && res.certified()) return res;
  if (nvars <= opt.fallback_var_limit) {
    auto ex = solve_exact(g, groups, comp);
    ex.delta = opt.delta;
    ex.method = "exact-simplex-fallback";
    return ex;
  }
  if (res.eta < 0) {
    res = solve_mwu(g, groups, opt.delta);
    res.delta = opt.delta;
  }
  return res;
}

RoutingResult min_congestion_routing(const CapGraph& g, const DemandSet& d,
                                     const RoutingOptions& opt) {
  return route_demands(g, vertex_demands(g, d), opt);
}

}  // namespace vsp
