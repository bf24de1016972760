#include "vsparse/witness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "vsparse/errors.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/routing.hpp"

namespace vsp {

VertexId walk_end(const CapGraph& g, const Walk& w) {
  VertexId cur = w.start;
  for (EdgeId e : w.edges) {
    const Edge& ed = g.edge(e);
    if (ed.u == cur)
      cur = ed.v;
    else if (ed.v == cur)
      cur = ed.u;
    else
      throw InputError("walk is not contiguous");
  }
  return cur;
}

Walk concat(const CapGraph& g, const Walk& a, const Walk& b) {
  if (walk_end(g, a) != b.start) throw InternalError("concatenating walks that do not meet");
  Walk w = a;
  w.edges.insert(w.edges.end(), b.edges.begin(), b.edges.end());
  return w;
}

std::optional<OneToOne> route_one_to_one(const CapGraph& g, const std::vector<VertexId>& sources,
                                         const std::vector<Target>& targets, int mult) {
  OneToOne out;
  out.mult = mult;
  if (sources.empty()) return out;
  if (targets.size() < sources.size()) return std::nullopt;
  std::vector<Q> reserve(g.num_edges(), 0);
  for (const Target& t : targets)
    if (t.via >= 0) reserve[t.via] += 1;
  CapGraph net(g.num_vertices());
  std::vector<EdgeId> origin;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Q c = g.edge(e).cap * mult - reserve[e];
    if (c <= 0) continue;
    net.add_edge(g.edge(e).u, g.edge(e).v, c);
    origin.push_back(e);
  }
  std::vector<VertexId> src, snk;
  std::map<VertexId, int> src_index, snk_index;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    VertexId s = net.add_vertex();
    net.add_edge(s, sources[i], 1);
    origin.push_back(-1);
    src.push_back(s);
    src_index[s] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < targets.size(); ++j) {
    VertexId t = net.add_vertex();
    net.add_edge(targets[j].at, t, 1);
    origin.push_back(-1);
    snk.push_back(t);
    snk_index[t] = static_cast<int>(j);
  }
  Q value;
  auto paths = max_flow_paths(net, src, snk, &value);
  if (value < static_cast<long>(sources.size())) return std::nullopt;
  out.walks.assign(sources.size(), Walk{});
  out.target_of.assign(sources.size(), -1);
  for (const PathFlow& p : paths) {
    if (p.amount != 1) throw InternalError("unit routing produced a path of amount != 1");
    int i = src_index.at(p.vertices.front());
    int j = snk_index.at(p.vertices.back());
    Walk w;
    w.start = sources[i];
    for (std::size_t x = 1; x + 1 < p.edges.size(); ++x) w.edges.push_back(origin[p.edges[x]]);
    if (targets[j].via >= 0) w.edges.push_back(targets[j].via);
    out.walks[i] = std::move(w);
    out.target_of[i] = j;
  }
  for (int j : out.target_of)
    if (j < 0) throw InternalError("unit routing left a source unrouted");
  return out;
}

std::optional<OneToOne> route_one_to_one_min(const CapGraph& g, const std::vector<VertexId>& sources,
                                             const std::vector<Target>& targets, int max_mult) {
  for (int m = 1; m <= max_mult; ++m)
    if (auto r = route_one_to_one(g, sources, targets, m)) return r;
  return std::nullopt;
}

int witness_r(const Witness& w) {
  return static_cast<int>(w.kind == 1 ? w.sets.size() : w.groups.size());
}

namespace {

long ceil_half(long k) { return (k + 1) / 2; }
long ceil_quarter(long k) { return (k + 3) / 4; }

std::string join_ids(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x + 1);
  return s;
}

// Counts walk crossings per edge; returns the first edge above limit*c_e.
bool congestion_ok(const CapGraph& g, const std::vector<Walk>& walks, long limit, std::string& why) {
  std::vector<Q> use(g.num_edges(), 0);
  for (const Walk& w : walks)
    for (EdgeId e : w.edges) use[e] += 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (use[e] > g.edge(e).cap * limit) {
      why = "edge " + std::to_string(e + 1) + " used " + to_string(use[e]) + " times";
      return false;
    }
  return true;
}

// sparsity of the best cut (exact); infinite/trivial count as well-linked
bool well_linked_at(const SubdividedInstance& inst, const Q& z_for_alpha, long mult,
                    const SparsestCutOptions& cut, std::string& detail) {
  CutCertificate c;
  try {
    c = sparsest_cut_exact(inst, cut);
  } catch (const BudgetRefusal&) {
    detail = "beyond the exact budget";
    return false;
  }
  if (c.infinite || c.trivial_cluster) {
    detail = "no nontrivial cut";
    return true;
  }
  detail = "sparsity " + to_string(c.sparsity);
  return !below_weak_threshold(c.sparsity, z_for_alpha, mult);
}

}  // namespace

CertReport verify_witness(const CapGraph& g, const Witness& w, long weak_mult,
                          const SparsestCutOptions& cut) {
  CertReport rep;
  long k = g.k();
  int r = witness_r(w);
  rep.add("r>=1", r >= 1, "r=" + std::to_string(r));
  if (r < 1) return rep;
  rep.add("path systems", static_cast<int>(w.paths.size()) == r,
          std::to_string(w.paths.size()) + " for r=" + std::to_string(r));
  if (static_cast<int>(w.paths.size()) != r) return rep;

  auto check_walks = [&](int j, const std::vector<Walk>& ws, const std::vector<char>& inside,
                         std::vector<EdgeId>& ends, std::vector<VertexId>& starts) {
    bool ok = true;
    std::string why;
    for (const Walk& x : ws) {
      if (!g.valid_vertex(x.start) || !g.is_terminal(x.start)) {
        ok = false;
        why = "walk does not start at a terminal";
        break;
      }
      if (x.edges.empty()) {
        ok = false;
        why = "empty walk";
        break;
      }
      try {
        walk_end(g, x);
      } catch (const InputError&) {
        ok = false;
        why = "walk is not contiguous";
        break;
      }
      EdgeId last = x.edges.back();
      if (last < 0 || last >= g.num_edges() ||
          inside[g.edge(last).u] == inside[g.edge(last).v]) {
        ok = false;
        why = "walk does not end at a boundary edge";
        break;
      }
      ends.push_back(last);
      starts.push_back(x.start);
    }
    rep.add("walks " + std::to_string(j + 1), ok, why);
    return ok;
  };
  auto distinct = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };

  if (w.kind == 1) {
    std::vector<int> owner(g.num_vertices(), -1);
    bool disjoint = true, nonterm = true;
    for (int j = 0; j < r; ++j)
      for (VertexId v : w.sets[j]) {
        if (!g.valid_vertex(v)) throw InputError("witness set has an unknown vertex");
        if (owner[v] >= 0) disjoint = false;
        owner[v] = j;
        if (g.is_terminal(v)) nonterm = false;
      }
    rep.add("sets disjoint", disjoint);
    rep.add("sets terminal-free", nonterm);
    long h = ceil_half(k);
    double lr = std::log2(static_cast<double>(r));
    long kstar = static_cast<long>(std::floor(2.0 * static_cast<double>(k) * r * lr));
    for (int j = 0; j < r; ++j) {
      const auto& ws = w.paths[j];
      rep.add("set " + std::to_string(j + 1) + " nonempty", !w.sets[j].empty());
      if (w.sets[j].empty()) continue;
      rep.add("paths " + std::to_string(j + 1) + " count", static_cast<long>(ws.size()) == h,
              std::to_string(ws.size()) + " of " + std::to_string(h));
      auto inside = vertex_mask(g, w.sets[j]);
      std::vector<EdgeId> ends;
      std::vector<VertexId> starts;
      if (check_walks(j, ws, inside, ends, starts)) {
        rep.add("paths " + std::to_string(j + 1) + " distinct terminals", distinct(starts));
        rep.add("paths " + std::to_string(j + 1) + " distinct edges", distinct(ends));
        std::string why;
        rep.add("paths " + std::to_string(j + 1) + " edge-disjoint", congestion_ok(g, ws, 1, why), why);
        if (!w.groups.empty() && static_cast<int>(w.groups.size()) == r) {
          auto a = ends, b = w.groups[j];
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          rep.add("paths " + std::to_string(j + 1) + " end at the group", a == b);
        }
      }
      std::string detail;
      bool wl = well_linked_at(subdivide_boundary(g, w.sets[j]), Q(std::max(kstar, 1L)), weak_mult,
                               cut, detail);
      rep.add("set " + std::to_string(j + 1) + " alpha_W(k*)-well-linked", wl,
              detail + ", k*=" + std::to_string(kstar));
    }
    return rep;
  }

  // kind 2
  long q = ceil_quarter(k);
  bool nonterm = !w.a.empty();
  for (VertexId v : w.a)
    if (!g.valid_vertex(v) || g.is_terminal(v)) nonterm = false;
  rep.add("A nonempty and terminal-free", nonterm);
  if (!nonterm) return rep;
  auto inside = vertex_mask(g, w.a);
  std::vector<EdgeId> all;
  bool sizes = true, boundary = true;
  for (const auto& grp : w.groups) {
    if (static_cast<long>(grp.size()) != q) sizes = false;
    for (EdgeId e : grp) {
      if (e < 0 || e >= g.num_edges() || inside[g.edge(e).u] == inside[g.edge(e).v]) boundary = false;
      all.push_back(e);
    }
  }
  rep.add("groups of ceil(k/4)", sizes, "ceil(k/4)=" + std::to_string(q));
  rep.add("groups on out(A)", boundary);
  rep.add("groups disjoint", distinct(all));
  rep.add("T* size", static_cast<long>(w.tstar.size()) == q);
  bool tterm = true;
  for (VertexId t : w.tstar)
    if (!g.valid_vertex(t) || !g.is_terminal(t)) tterm = false;
  rep.add("T* terminals", tterm && distinct(w.tstar));
  if (!boundary || !tterm) return rep;
  auto ts = w.tstar;
  std::sort(ts.begin(), ts.end());
  for (int j = 0; j < r; ++j) {
    const auto& ws = w.paths[j];
    std::vector<EdgeId> ends;
    std::vector<VertexId> starts;
    if (!check_walks(j, ws, inside, ends, starts)) continue;
    std::sort(starts.begin(), starts.end());
    std::sort(ends.begin(), ends.end());
    auto grp = w.groups[j];
    std::sort(grp.begin(), grp.end());
    rep.add("paths " + std::to_string(j + 1) + " start at T*", starts == ts);
    rep.add("paths " + std::to_string(j + 1) + " end at E_j", ends == grp);
    std::string why;
    rep.add("paths " + std::to_string(j + 1) + " congestion <= 2", congestion_ok(g, ws, 2, why), why);
  }
  std::string detail;
  bool wl = well_linked_at(subdivide_boundary(g, w.a, all), Q(std::max(static_cast<long>(all.size()), 1L)),
                           weak_mult, cut, detail);
  rep.add("A alpha_W-well-linked for the groups", wl, detail);
  return rep;
}

Witness uncontract_witness(const ContractionMap& m, const Witness& w) {
  auto expand = [&](const std::vector<VertexId>& s) {
    std::vector<VertexId> out;
    for (VertexId h : s) out.insert(out.end(), m.preimage[h].begin(), m.preimage[h].end());
    std::sort(out.begin(), out.end());
    return out;
  };
  Witness o;
  o.kind = w.kind;
  for (const auto& s : w.sets) o.sets.push_back(expand(s));
  o.a = expand(w.a);
  for (VertexId t : w.tstar) o.tstar.push_back(m.preimage[t][0]);
  for (const auto& grp : w.groups) {
    std::vector<EdgeId> g2;
    for (EdgeId e : grp) g2.push_back(m.h_edge_origin[e]);
    o.groups.push_back(g2);
  }
  // keep only the starting terminals, which fix T_j for kind 1
  for (const auto& ws : w.paths) {
    std::vector<Walk> starts;
    for (const Walk& x : ws) starts.push_back(Walk{m.preimage[x.start][0], {}});
    o.paths.push_back(starts);
  }
  o.alpha = w.alpha;
  o.alpha_certified = w.alpha_certified;
  return o;
}

namespace {

// Min-congestion flow inside G[S] for aggregated endpoint demands, kept as
// paths per endpoint pair so terminal pairs can take their share.
struct InnerRouting {
  const CapGraph& g;
  std::vector<VertexId> verts;
  std::vector<int> local;  // g vertex -> index in verts, -1 outside
  CapGraph sub;
  std::vector<EdgeId> sub_origin;
  std::map<std::pair<int, int>, Q> demand;
  std::map<std::pair<int, int>, std::vector<PathFlow>> paths;
  Q eta = 0;

  InnerRouting(const CapGraph& gg, const std::vector<VertexId>& s) : g(gg), verts(s) {
    local.assign(g.num_vertices(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<int>(i);
    sub = CapGraph(static_cast<int>(verts.size()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (local[ed.u] >= 0 && local[ed.v] >= 0) {
        sub.add_edge(local[ed.u], local[ed.v], ed.cap);
        sub_origin.push_back(e);
      }
    }
  }

  void add(VertexId x, VertexId y, const Q& amount) {
    if (x == y) return;
    int a = local.at(x), b = local.at(y);
    if (a < 0 || b < 0) throw InternalError("inner routing endpoint outside the set");
    demand[{std::min(a, b), std::max(a, b)}] += amount;
  }

  bool solve(std::string& why) {
    std::vector<VertexDemand> ds;
    for (const auto& [p, a] : demand) ds.push_back({p.first, p.second, a});
    if (ds.empty()) return true;
    auto res = route_demands(sub, ds);
    if (res.infinite) {
      why = "witness set is disconnected between its edges";
      return false;
    }
    eta = congestion(sub, res.flow);
    for (const Commodity& c : res.flow.commodities)
      for (PathFlow& p : decompose_paths(sub, c)) {
        int s = c.source, t = p.vertices.back();
        paths[{std::min(s, t), std::max(s, t)}].push_back(std::move(p));
      }
    return true;
  }

  // amount from x to y along the stored paths, scaled to the pair's share
  void apply(std::vector<Q>& flow, VertexId x, VertexId y, const Q& amount) const {
    if (x == y) return;
    int a = local[x], b = local[y];
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    Q total = demand.at(key);
    for (const PathFlow& p : paths.at(key)) {
      Q share = p.amount * amount / total;
      bool forward = p.vertices.front() == a;
      for (std::size_t i = 0; i < p.edges.size(); ++i) {
        EdgeId se = p.edges[i];
        EdgeId e = sub_origin[se];
        bool along = sub.edge(se).u == p.vertices[i];
        Q delta = along == forward ? share : Q(-share);
        // the sub-edge and its origin share orientation
        flow[e] += delta;
      }
    }
  }
};

void add_walk(const CapGraph& g, std::vector<Q>& flow, const Walk& w, const Q& amount, bool reverse) {
  VertexId cur = w.start;
  for (EdgeId e : w.edges) {
    bool along = g.edge(e).u == cur;
    cur = g.other(e, cur);
    Q d = along ? amount : Q(-amount);
    flow[e] += reverse ? Q(-d) : d;
  }
}

VertexId inside_end(const CapGraph& g, EdgeId e, const std::vector<char>& inside) {
  return inside[g.edge(e).u] ? g.edge(e).u : g.edge(e).v;
}

VertexId outside_end(const CapGraph& g, EdgeId e, const std::vector<char>& inside) {
  return inside[g.edge(e).u] ? g.edge(e).v : g.edge(e).u;
}

}  // namespace

WitnessFlow witness_to_flow(const CapGraph& g, const Witness& w) {
  WitnessFlow out;
  const auto& T = g.terminals();
  int k = g.k();
  int r = witness_r(w);
  if (k < 2) {
    out.ok = true;
    out.why = "fewer than two terminals";
    return out;
  }
  if (r < 1) {
    out.why = "empty witness";
    return out;
  }
  out.pair_amount = frac(1, k);
  Q share = frac(1, static_cast<long>(k) * r);

  // walk_of[j][t]: terminal t's walk into the witness in round j; ends
  // crossing a witness edge, at the inside endpoint end_of[j][t]
  std::vector<std::vector<Walk>> walk_of(r, std::vector<Walk>(k));
  std::vector<std::vector<VertexId>> end_of(r, std::vector<VertexId>(k, -1));
  std::vector<InnerRouting> inner;

  if (w.kind == 1) {
    for (int j = 0; j < r; ++j) {
      auto inside = vertex_mask(g, w.sets[j]);
      std::vector<EdgeId> edges = j < static_cast<int>(w.groups.size()) ? w.groups[j] : std::vector<EdgeId>{};
      if (edges.empty()) {
        out.why = "kind-1 witness without target edges";
        return out;
      }
      std::vector<VertexId> tj;
      if (j < static_cast<int>(w.paths.size()) && !w.paths[j].empty())
        for (const Walk& x : w.paths[j]) tj.push_back(x.start);
      else
        for (std::size_t i = 0; i < edges.size() && i < T.size(); ++i) tj.push_back(T[i]);
      std::vector<Target> tg;
      for (EdgeId e : edges) tg.push_back({outside_end(g, e, inside), e});
      auto pj = route_one_to_one_min(g, tj, tg, 3);
      if (!pj) {
        out.why = "no terminal-to-edge system with congestion <= 3 for set " + std::to_string(j + 1);
        return out;
      }
      out.path_mult = std::max(out.path_mult, pj->mult);
      std::vector<char> in_tj(g.num_vertices(), 0);
      for (VertexId t : tj) in_tj[t] = 1;
      std::vector<VertexId> rest;
      for (VertexId t : T)
        if (!in_tj[t]) rest.push_back(t);
      std::vector<Target> tt;
      for (VertexId t : tj) tt.push_back({t, -1});
      auto star = route_one_to_one_min(g, rest, tt, 3);
      if (!star) {
        out.why = "no terminal-to-terminal system with congestion <= 3 for set " + std::to_string(j + 1);
        return out;
      }
      out.spread_mult = std::max(out.spread_mult, star->mult);
      for (std::size_t i = 0; i < tj.size(); ++i) {
        int ti = g.terminal_index(tj[i]);
        walk_of[j][ti] = pj->walks[i];
        end_of[j][ti] = inside_end(g, edges[pj->target_of[i]], inside);
      }
      for (std::size_t i = 0; i < rest.size(); ++i) {
        int ti = g.terminal_index(rest[i]);
        VertexId mate = tj[star->target_of[i]];
        int mi = g.terminal_index(mate);
        walk_of[j][ti] = concat(g, star->walks[i], walk_of[j][mi]);
        end_of[j][ti] = end_of[j][mi];
      }
      inner.emplace_back(g, w.sets[j]);
    }
  } else {
    auto inside = vertex_mask(g, w.a);
    std::vector<char> in_star(g.num_vertices(), 0);
    for (VertexId t : w.tstar) in_star[t] = 1;
    std::vector<VertexId> rest;
    for (VertexId t : T)
      if (!in_star[t]) rest.push_back(t);
    // each terminal outside T* reaches T*, in chunks of |T*|
    std::vector<VertexId> mate(g.num_vertices(), -1);
    std::vector<Walk> to_star(g.num_vertices());
    for (VertexId t : w.tstar) {
      mate[t] = t;
      to_star[t] = Walk{t, {}};
    }
    std::size_t q = w.tstar.size();
    if (q == 0) {
      out.why = "empty T*";
      return out;
    }
    std::vector<Target> tt;
    for (VertexId t : w.tstar) tt.push_back({t, -1});
    for (std::size_t from = 0; from < rest.size(); from += q) {
      std::vector<VertexId> chunk(rest.begin() + from, rest.begin() + std::min(rest.size(), from + q));
      auto qi = route_one_to_one_min(g, chunk, tt, 3);
      if (!qi) {
        out.why = "no terminal-to-T* system with congestion <= 3";
        return out;
      }
      out.spread_mult = std::max(out.spread_mult, qi->mult);
      for (std::size_t i = 0; i < chunk.size(); ++i) {
        mate[chunk[i]] = w.tstar[qi->target_of[i]];
        to_star[chunk[i]] = qi->walks[i];
      }
    }
    inner.emplace_back(g, w.a);
    for (int j = 0; j < r; ++j) {
      std::vector<Target> tg;
      for (EdgeId e : w.groups[j]) tg.push_back({outside_end(g, e, inside), e});
      auto pj = route_one_to_one_min(g, w.tstar, tg, 6);
      if (!pj) {
        out.why = "no T*-to-group system with congestion <= 6 for group " + std::to_string(j + 1);
        return out;
      }
      out.path_mult = std::max(out.path_mult, pj->mult);
      std::vector<Walk> star_walk(g.num_vertices());
      std::vector<VertexId> star_end(g.num_vertices(), -1);
      for (std::size_t i = 0; i < w.tstar.size(); ++i) {
        star_walk[w.tstar[i]] = pj->walks[i];
        star_end[w.tstar[i]] = inside_end(g, w.groups[j][pj->target_of[i]], inside);
      }
      for (VertexId t : T) {
        int ti = g.terminal_index(t);
        walk_of[j][ti] = concat(g, to_star[t], star_walk[mate[t]]);
        end_of[j][ti] = star_end[mate[t]];
      }
    }
  }

  auto inner_for = [&](int j) -> InnerRouting& { return w.kind == 1 ? inner[j] : inner[0]; };
  for (int j = 0; j < r; ++j)
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) inner_for(j).add(end_of[j][a], end_of[j][b], share);
  Q inner_eta = 0;
  for (auto& ir : inner) {
    if (!ir.solve(out.why)) return out;
    if (ir.eta > inner_eta) inner_eta = ir.eta;
  }
  out.inner_congestion = inner_eta;

  out.flow.commodities.resize(k - 1);
  for (int a = 0; a + 1 < k; ++a) {
    Commodity& c = out.flow.commodities[a];
    c.source = T[a];
    c.flow.assign(g.num_edges(), Q(0));
    for (int b = a + 1; b < k; ++b) {
      c.sinks.emplace_back(T[b], out.pair_amount);
      for (int j = 0; j < r; ++j) {
        add_walk(g, c.flow, walk_of[j][a], share, false);
        inner_for(j).apply(c.flow, end_of[j][a], end_of[j][b], share);
        add_walk(g, c.flow, walk_of[j][b], share, true);
      }
    }
  }
  std::string why;
  if (!conserves(g, out.flow, &why)) throw InternalError("witness flow does not conserve: " + why);
  out.congestion = congestion(g, out.flow);
  out.ok = true;
  return out;
}

Witness read_witness(std::istream& in) {
  Witness w;
  std::string line;
  int line_no = 0;
  auto ids = [&](std::istringstream& ss) {
    std::vector<int> v;
    for (long x; ss >> x;) {
      if (x < 1) throw ParseError(line_no, "ids are 1-based");
      v.push_back(static_cast<int>(x - 1));
    }
    if (!ss.eof()) throw ParseError(line_no, "bad id");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "kind") {
      if (!(ss >> w.kind) || (w.kind != 1 && w.kind != 2)) throw ParseError(line_no, "kind must be 1 or 2");
    } else if (kind == "set") {
      w.sets.push_back(ids(ss));
    } else if (kind == "a") {
      w.a = ids(ss);
    } else if (kind == "tstar") {
      w.tstar = ids(ss);
    } else if (kind == "group") {
      w.groups.push_back(ids(ss));
    } else if (kind == "path") {
      long j, start;
      if (!(ss >> j >> start) || j < 1 || start < 1) throw ParseError(line_no, "path needs <j> <start>");
      if (static_cast<long>(w.paths.size()) < j) w.paths.resize(j);
      Walk x;
      x.start = static_cast<VertexId>(start - 1);
      x.edges = ids(ss);
      w.paths[j - 1].push_back(std::move(x));
    } else {
      throw ParseError(line_no, "unknown witness record '" + kind + "'");
    }
  }
  return w;
}

void write_witness(std::ostream& out, const Witness& w) {
  out << "kind " << w.kind << "\n";
  for (const auto& s : w.sets) out << "set " << join_ids(s) << "\n";
  if (!w.a.empty()) out << "a " << join_ids(w.a) << "\n";
  if (!w.tstar.empty()) out << "tstar " << join_ids(w.tstar) << "\n";
  for (const auto& grp : w.groups) out << "group " << join_ids(grp) << "\n";
  for (std::size_t j = 0; j < w.paths.size(); ++j)
    for (const Walk& x : w.paths[j]) {
      out << "path " << j + 1 << " " << x.start + 1;
      if (!x.edges.empty()) out << " " << join_ids(x.edges);
      out << "\n";
    }
}

}  // namespace vsp
