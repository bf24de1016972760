#include "vsparse/flow_sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "vsparse/errors.hpp"
#include "vsparse/maxflow.hpp"

namespace vsp {

namespace {

long ceil_half(long k) { return (k + 1) / 2; }
long ceil_quarter(long k) { return (k + 3) / 4; }

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

long edges_between(const CapGraph& g, const std::vector<char>& a, const std::vector<char>& b) {
  Q s = 0;
  for (const Edge& e : g.edges())
    if ((a[e.u] && b[e.v]) || (a[e.v] && b[e.u])) s += e.cap;
  return to_int64(s);
}

std::vector<char> mask_of(int n, const std::vector<VertexId>& s) {
  std::vector<char> m(n, 0);
  for (VertexId v : s) m[v] = 1;
  return m;
}

// Unit edges and degree-1 terminals: non-terminals keep their order and come
// first; every unit of a terminal edge becomes its own terminal.
struct UnitLevel {
  CapGraph g;
  std::vector<VertexId> to_parent;  // -1 for terminals
};

std::optional<UnitLevel> unitize(const CapGraph& gb, long limit) {
  Q total = 0;
  for (const Edge& e : gb.edges()) total += e.cap;
  if (total > limit) return std::nullopt;
  UnitLevel u;
  std::vector<VertexId> local(gb.num_vertices(), -1);
  for (VertexId v = 0; v < gb.num_vertices(); ++v)
    if (!gb.is_terminal(v)) {
      local[v] = u.g.add_vertex();
      u.to_parent.push_back(v);
    }
  for (const Edge& e : gb.edges()) {
    bool tu = gb.is_terminal(e.u), tv = gb.is_terminal(e.v);
    if (tu && tv) continue;
    auto mult = to_int64(e.cap);
    for (std::int64_t i = 0; i < mult; ++i) {
      if (!tu && !tv) {
        u.g.add_edge(local[e.u], local[e.v], 1);
      } else {
        VertexId t = u.g.add_vertex();
        u.to_parent.push_back(-1);
        u.g.add_edge(t, local[tu ? e.v : e.u], 1);
        u.g.add_terminal(t);
      }
    }
  }
  return u;
}

// capacity on terminal-to-non-terminal edges
long level_k(const CapGraph& g) {
  Q k = 0;
  for (const Edge& e : g.edges())
    if (g.is_terminal(e.u) != g.is_terminal(e.v)) k += e.cap;
  return to_int64(k);
}

struct Ctx {
  const CapGraph& top;
  FlowParams p;
  FlowParams theo;
  const FlowBuildOptions& opt;
  FlowBuildLog& log;
  std::map<std::vector<VertexId>, GoodRouterResult> routers;

  const GoodRouterResult& router(std::vector<VertexId> s) {
    std::sort(s.begin(), s.end());
    auto it = routers.find(s);
    if (it != routers.end()) return it->second;
    ++log.router_checks;
    return routers.emplace(s, is_good_router(top, s, opt.router)).first->second;
  }
  bool router_yes(const std::vector<VertexId>& s) { return router(s).verdict == Verdict::Yes; }
  void note(int depth, const std::string& msg) {
    log.notes.push_back("depth " + std::to_string(depth) + ": " + msg);
  }
};

std::vector<VertexId> lift(const std::vector<VertexId>& s, const std::vector<VertexId>& to_top) {
  std::vector<VertexId> out;
  for (VertexId v : s) out.push_back(to_top[v]);
  return sorted(out);
}

std::vector<std::vector<VertexId>> build_level(Ctx& ctx, const CapGraph& gb, const std::vector<VertexId>& to_top,
                                               int depth);

// Contract a set S of G': strong-decompose its preimage S', recurse per
// piece, replace the routers inside S'. Returns false if |V| did not drop.
bool contract_procedure(Ctx& ctx, const UnitLevel& lv, const std::vector<VertexId>& to_top_u,
                        std::vector<std::vector<VertexId>>& clusters, const Contracted& gp,
                        const std::vector<VertexId>& s, long k, int depth) {
  const CapGraph& gu = lv.g;
  ContractEvent ev;
  ev.depth = depth;
  ev.k = k;
  ev.set_size = static_cast<long>(s.size());
  ev.boundary = to_int64(boundary_capacity(gp.h, s));
  ev.n_before = gp.h.num_vertices();
  std::vector<VertexId> sp;
  for (VertexId h : s) sp.insert(sp.end(), gp.map.preimage[h].begin(), gp.map.preimage[h].end());
  sp = sorted(sp);

  DecompOptions dopt;
  dopt.cut = ctx.opt.cut;
  dopt.weak_mult = ctx.p.weak_mult;
  Decomposition d = strong_decompose(gu, sp, dopt);
  std::vector<std::vector<VertexId>> fresh;
  for (const ClusterCert& z : d.clusters) {
    long kz = to_int64(z.boundary);
    ev.piece_k.push_back(kz);
    ev.ledger_lhs += ctx.theo.F(kz);
    ev.active_lhs += ctx.p.F(kz);
    auto inst = subdivide_boundary(gu, z.vertices);
    std::vector<VertexId> tz(inst.g.num_vertices(), -1);
    for (int i = 0; i < inst.num_inner; ++i) tz[i] = to_top_u[inst.inner_to_orig[i]];
    for (const auto& c : build_level(ctx, inst.g, tz, depth + 1)) {
      std::vector<VertexId> back;
      for (VertexId v : c) back.push_back(inst.inner_to_orig[v]);
      fresh.push_back(sorted(back));
    }
  }
  long kpp = next_pow2(std::max(ev.boundary, 1L));
  ev.ledger_rhs = 128 * ctx.theo.F(kpp);
  ev.active_rhs = 128 * ctx.p.F(kpp);

  auto in_sp = mask_of(gu.num_vertices(), sp);
  std::vector<std::vector<VertexId>> next;
  for (const auto& c : clusters)
    if (!in_sp[c[0]]) next.push_back(c);
  next.insert(next.end(), fresh.begin(), fresh.end());
  ev.n_after = contract(gu, next).h.num_vertices();
  ev.adopted = ev.n_after < ev.n_before;
  if (ev.adopted) clusters = std::move(next);
  ctx.log.contractions.push_back(std::move(ev));
  return ctx.log.contractions.back().adopted;
}

// Stalled search: merge two adjacent H vertices whose union is a certified
// good router, smallest joint boundary first. The result stays a legal
// contraction; it just skips the contractibility size test.
bool merge_adjacent_routers(Ctx& ctx, const UnitLevel& lv, const std::vector<VertexId>& to_top_u,
                            std::vector<std::vector<VertexId>>& clusters, const Contracted& gp, int depth) {
  struct Cand {
    Q b;
    VertexId x, y;
    std::vector<VertexId> join;
  };
  std::vector<Cand> cands;
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Edge& e : gp.h.edges()) {
    if (e.u == e.v || gp.h.is_terminal(e.u) || gp.h.is_terminal(e.v)) continue;
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) continue;
    std::vector<VertexId> join = gp.map.preimage[key.first];
    join.insert(join.end(), gp.map.preimage[key.second].begin(), gp.map.preimage[key.second].end());
    join = sorted(join);
    cands.push_back({boundary_capacity(lv.g, join), key.first, key.second, std::move(join)});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.b, a.x, a.y) < std::tie(b.b, b.x, b.y);
  });
  for (Cand& c : cands) {
    if (!ctx.router_yes(lift(c.join, to_top_u))) continue;
    auto in_join = mask_of(lv.g.num_vertices(), c.join);
    std::vector<std::vector<VertexId>> next;
    for (const auto& cl : clusters)
      if (!in_join[cl[0]]) next.push_back(cl);
    next.push_back(std::move(c.join));
    clusters = std::move(next);
    ++ctx.log.router_merges;
    return true;
  }
  ctx.note(depth, "no adjacent pair merges into a certified good router");
  return false;
}

// While G' keeps more than F(k) non-terminals: contract, or stop on a witness
// or an inconclusive search. `clusters` holds the current contraction.
void contraction_loop(Ctx& ctx, const UnitLevel& lv, const std::vector<VertexId>& to_top_u,
                      std::vector<std::vector<VertexId>>& clusters, long k, int depth, bool connected,
                      const std::vector<VertexId>& r_top) {
  std::vector<VertexId> ru = non_terminals(lv.g);
  for (long iter = 0;; ++iter) {
    Contracted gp = contract(lv.g, clusters);
    long n_nt = gp.h.num_vertices() - gp.h.k();
    if (mpz_class(n_nt) <= ctx.p.F(k)) break;
    if (iter > lv.g.num_vertices()) throw InternalError("contraction loop did not terminate");
    SearchOutcome out = find_contractible_or_witness(gp.h, ctx.p, ctx.opt, ctx.log, depth);
    if (out.kind == SearchOutcome::Kind::Contractible) {
      if (!contract_procedure(ctx, lv, to_top_u, clusters, gp, out.set, k, depth)) {
        ctx.note(depth, "contraction did not shrink G'; stopping at " + std::to_string(n_nt) + " non-terminals");
        break;
      }
      continue;
    }
    if (out.kind == SearchOutcome::Kind::Witness) {
      WitnessEvent we;
      we.depth = depth;
      we.kind = out.witness.kind;
      we.r = witness_r(out.witness);
      we.bound = out.witness.kind == 1 ? 10 : 34;
      CertReport rep = verify_witness(gp.h, out.witness, ctx.p.weak_mult, ctx.opt.cut);
      we.verified = rep.ok();
      for (const auto& it : rep.items)
        if (!it.ok) {
          we.verify_detail = it.name + (it.detail.empty() ? "" : " (" + it.detail + ")");
          break;
        }
      Witness wg = uncontract_witness(gp.map, out.witness);
      WitnessFlow wf = witness_to_flow(lv.g, wg);
      we.flow_ok = wf.ok;
      we.congestion = wf.congestion;
      we.router_yes = connected && ctx.router_yes(r_top);
      ctx.log.witnesses.push_back(we);
      if (we.router_yes) {
        clusters = {ru};
        break;
      }
      ctx.note(depth, "witness found but R is not a certified good router");
    } else {
      ctx.note(depth, "search inconclusive: " + out.detail);
    }
    if (!merge_adjacent_routers(ctx, lv, to_top_u, clusters, gp, depth)) break;
  }
}

std::vector<std::vector<VertexId>> build_level(Ctx& ctx, const CapGraph& gb, const std::vector<VertexId>& to_top,
                                               int depth) {
  std::vector<VertexId> rb = non_terminals(gb);
  if (rb.empty()) return {};
  long k = level_k(gb);
  auto r_top = lift(rb, to_top);
  bool connected = induced_connected(gb, rb);

  if (k <= 4) {
    if (connected && ctx.router_yes(r_top)) return {rb};
    ctx.note(depth, "k=" + std::to_string(k) + " base case: R of " + std::to_string(rb.size()) +
                        " vertices is not a certified good router; left uncontracted");
    return {};
  }
  if (ctx.p.router_shortcut && connected && ctx.router_yes(r_top)) return {rb};
  if (mpz_class(static_cast<long>(rb.size())) <= ctx.p.F(k)) return {};

  auto lv = unitize(gb, ctx.opt.unitize_limit);
  if (!lv) {
    ctx.note(depth, "k=" + std::to_string(k) + ": too many unit edges for the contraction loop");
    return {};
  }
  std::vector<VertexId> to_top_u(lv->g.num_vertices(), -1);
  for (VertexId v = 0; v < lv->g.num_vertices(); ++v)
    if (lv->to_parent[v] >= 0) to_top_u[v] = to_top[lv->to_parent[v]];
  std::vector<std::vector<VertexId>> clusters;
  contraction_loop(ctx, *lv, to_top_u, clusters, k, depth, connected, r_top);
  std::vector<std::vector<VertexId>> back;
  for (const auto& c : clusters) {
    std::vector<VertexId> b;
    for (VertexId v : c) b.push_back(lv->to_parent[v]);
    back.push_back(sorted(b));
  }
  return back;
}

RouterSparsifier finalize(Ctx& ctx, const CapGraph& g, const std::vector<std::vector<VertexId>>& clusters) {
  RouterSparsifier out;
  auto con = contract(g, clusters);
  out.h = std::move(con.h);
  out.map = std::move(con.map);
  for (const auto& c : out.map.clusters) {
    const GoodRouterResult& res = ctx.router(c);
    RouterCert rc;
    rc.vertices = c;
    rc.well_linked = res.well_linked.well_linked;
    rc.wl_certified = res.well_linked.certified;
    const CutCertificate& cut = res.well_linked.cut;
    rc.wl_sparsity = cut.infinite || cut.trivial_cluster ? Q(1) : cut.sparsity;
    rc.z = res.route.z;
    rc.eta = res.route.eta;
    rc.lower = res.route.lower;
    rc.flow = res.route.flow;
    rc.method = res.route.method;
    if (res.verdict != Verdict::Yes) throw InternalError("adopted a cluster that is not a certified good router");
    out.certs.push_back(std::move(rc));
  }
  out.params = ctx.p;
  out.cert_graph = g;
  return out;
}

FlowParamOptions theoretical_of(const FlowParamOptions& o) {
  FlowParamOptions t = o;
  t.profile = Profile::Theoretical;
  t.r_override = 0;
  return t;
}

// ---- search ----

std::vector<VertexId> bfs_order(const CapGraph& g, const std::vector<VertexId>& s) {
  auto in = mask_of(g.num_vertices(), s);
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<VertexId> order;
  for (VertexId root : sorted(s)) {
    if (seen[root]) continue;
    std::deque<VertexId> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      order.push_back(v);
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (in[w] && !seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
  }
  return order;
}

// Path from a max-flow network back to G' edges; consecutive copies of one
// edge (a subdivided edge crossed through its middle) collapse.
Walk to_walk(VertexId start, const std::vector<EdgeId>& net_edges, const std::vector<EdgeId>& origin) {
  Walk w{start, {}};
  for (std::size_t i = 0; i < net_edges.size(); ++i) {
    EdgeId e = origin[net_edges[i]];
    if (e < 0) continue;
    if (!w.edges.empty() && w.edges.back() == e && i > 0 && origin[net_edges[i - 1]] == e) continue;
    w.edges.push_back(e);
  }
  return w;
}

}  // namespace

bool is_contractible(const CapGraph& gp, const std::vector<VertexId>& s, long k, const FlowParams& p) {
  if (s.empty()) return false;
  for (VertexId v : s)
    if (gp.is_terminal(v)) return false;
  if (!induced_connected(gp, s)) return false;
  long b = to_int64(boundary_capacity(gp, s));
  if (b > ceil_half(k)) return false;
  return mpz_class(static_cast<long>(s.size())) > p.contract_mult * p.F(b);
}

namespace {

// Fallback when the structured search stalls: the largest sink side of a
// terminal min cut into one vertex or one edge that is contractible.
std::vector<VertexId> scan_contractible(const CapGraph& gp, long k, const FlowParams& p) {
  std::vector<VertexId> best;
  auto try_sink = [&](std::vector<VertexId> sink) {
    auto mf = max_flow(gp, gp.terminals(), sink);
    if (mf.value > ceil_half(k)) return;
    std::vector<VertexId> side;
    for (VertexId v = 0; v < gp.num_vertices(); ++v)
      if (!gp.is_terminal(v) && !mf.cut.side[v]) side.push_back(v);
    for (auto& comp : induced_components(gp, side))
      if (std::binary_search(comp.begin(), comp.end(), sink[0]) && comp.size() > best.size() &&
          is_contractible(gp, comp, k, p))
        best = std::move(comp);
  };
  for (VertexId v = 0; v < gp.num_vertices(); ++v)
    if (!gp.is_terminal(v)) try_sink({v});
  for (const Edge& e : gp.edges())
    if (!gp.is_terminal(e.u) && !gp.is_terminal(e.v) && e.u != e.v) try_sink({std::min(e.u, e.v), std::max(e.u, e.v)});
  return best;
}

}  // namespace

RefineOutcome balanced_cut_refine(const CapGraph& gp, const std::vector<VertexId>& s_in, const FlowParams& p,
                                  const FlowBuildOptions& opt, FlowBuildLog& log, int depth) {
  const int n = gp.num_vertices();
  const long k = gp.k();
  const long rk = p.r * k;
  const long q = ceil_quarter(k);
  const long h = ceil_half(k);
  std::vector<VertexId> s = sorted(s_in);
  const long ns = static_cast<long>(s.size());
  RefineEvent ev;
  ev.depth = depth;
  ev.k = k;
  ev.set_size = ns;
  ev.r = p.r;
  RefineOutcome out;
  auto finish = [&](RefineOutcome::Kind kind, const std::string& name) {
    out.kind = kind;
    ev.outcome = name;
    for (std::size_t i = 1; i < ev.cut_history.size(); ++i)
      if (ev.cut_history[i] >= ev.cut_history[i - 1]) ev.decreasing_ok = false;
    log.refinements.push_back(ev);
    return out;
  };

  auto order = bfs_order(gp, s);
  std::vector<VertexId> x(order.begin(), order.begin() + (ns + 1) / 2), y(order.begin() + (ns + 1) / 2, order.end());
  auto balanced = [&](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    return 4 * static_cast<long>(a.size()) >= ns && 4 * static_cast<long>(b.size()) >= ns;
  };
  auto cut_of = [&](const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
    return edges_between(gp, mask_of(n, a), mask_of(n, b));
  };
  // adopt (x2, y2) if it is balanced and strictly better
  auto repartition = [&](std::vector<VertexId> x2, std::vector<VertexId> y2, const std::string& step) {
    long before = ev.cut_history.back();
    long after = cut_of(x2, y2);
    if (!balanced(x2, y2)) ev.balanced_ok = false;
    ev.steps.push_back(step);
    ev.cut_history.push_back(after);
    if (!balanced(x2, y2) || after >= before) {
      out.detail = step + " produced |X|=" + std::to_string(x2.size()) + " |Y|=" + std::to_string(y2.size()) +
                   " cut " + std::to_string(after) + " from " + std::to_string(before);
      return false;
    }
    x = sorted(std::move(x2));
    y = sorted(std::move(y2));
    return true;
  };
  if (ns < 2) {
    out.detail = "set too small to partition";
    return finish(RefineOutcome::Kind::Inconclusive, "inconclusive");
  }
  x = sorted(x);
  y = sorted(y);
  ev.cut_history.push_back(cut_of(x, y));

  for (long iter = 0; iter <= gp.num_edges() + 1; ++iter) {
    if (x.size() < y.size()) std::swap(x, y);
    long cut = ev.cut_history.back();
    if (cut <= rk) {
      out.x = x;
      out.y = y;
      ev.x_size = static_cast<long>(x.size());
      ev.y_size = static_cast<long>(y.size());
      if (!balanced(x, y)) ev.balanced_ok = false;
      return finish(RefineOutcome::Kind::Partition, "partition");
    }
    auto xm = mask_of(n, x), ym = mask_of(n, y);
    std::vector<EdgeId> gamma;
    for (EdgeId e = 0; e < gp.num_edges(); ++e) {
      const Edge& ed = gp.edge(e);
      if ((xm[ed.u] && ym[ed.v]) || (xm[ed.v] && ym[ed.u])) gamma.push_back(e);
    }

    // step 1: terminals to the middles of the Gamma edges
    CapGraph net(n);
    std::vector<EdgeId> origin;
    std::vector<char> in_gamma(gp.num_edges(), 0);
    for (EdgeId e : gamma) in_gamma[e] = 1;
    for (EdgeId e = 0; e < gp.num_edges(); ++e)
      if (!in_gamma[e]) {
        net.add_edge(gp.edge(e).u, gp.edge(e).v, gp.edge(e).cap);
        origin.push_back(e);
      }
    std::vector<VertexId> mids;
    std::map<VertexId, EdgeId> mid_edge;
    for (EdgeId e : gamma) {
      VertexId m = net.add_vertex();
      net.add_edge(gp.edge(e).u, m, 1);
      origin.push_back(e);
      net.add_edge(m, gp.edge(e).v, 1);
      origin.push_back(e);
      mids.push_back(m);
      mid_edge[m] = e;
    }
    const auto& T = gp.terminals();
    auto mf = max_flow(net, T, mids);
    if (mf.value < h) {
      std::vector<VertexId> a_nt, b_nt;
      for (VertexId v = 0; v < n; ++v)
        if (!gp.is_terminal(v)) (mf.cut.side[v] ? a_nt : b_nt).push_back(v);
      auto am = mask_of(n, a_nt);
      std::vector<VertexId> xa, xb;
      for (VertexId v : x) (am[v] ? xa : xb).push_back(v);
      if (xa.size() >= xb.size()) {
        std::vector<VertexId> y2 = y;
        y2.insert(y2.end(), xb.begin(), xb.end());
        if (!repartition(xa, y2, "step1: X_A")) return finish(RefineOutcome::Kind::Inconclusive, "inconclusive");
        continue;
      }
      for (const auto& comp : induced_components(gp, b_nt))
        if (is_contractible(gp, comp, k, p)) {
          out.set = comp;
          out.detail = "component of the sink side";
          return finish(RefineOutcome::Kind::Contractible, "contractible");
        }
      auto sm = mask_of(n, s);
      std::vector<VertexId> bs;
      for (VertexId v : b_nt)
        if (sm[v]) bs.push_back(v);
      std::vector<VertexId> x2;
      for (const auto& comp : induced_components(gp, bs)) {
        if (4 * static_cast<long>(x2.size()) >= ns) break;
        x2.insert(x2.end(), comp.begin(), comp.end());
      }
      auto x2m = mask_of(n, x2);
      std::vector<VertexId> y2;
      for (VertexId v : s)
        if (!x2m[v]) y2.push_back(v);
      if (!repartition(x2, y2, "step1: sink-side components"))
        return finish(RefineOutcome::Kind::Inconclusive, "inconclusive");
      continue;
    }
    // ceil(k/4) paths ending at distinct Gamma edges
    Q dummy;
    auto paths = max_flow_paths(net, T, mids, &dummy);
    std::vector<VertexId> tstar;
    std::vector<EdgeId> gamma1;
    std::vector<Walk> p1;          // ends having crossed the Gamma edge
    std::vector<Walk> p1_to_x;     // ends at the X endpoint of the Gamma edge
    std::vector<char> used(gp.num_edges(), 0);
    for (const PathFlow& pf : paths) {
      if (static_cast<long>(gamma1.size()) >= q) break;
      EdgeId e = mid_edge.at(pf.vertices.back());
      if (used[e]) continue;
      used[e] = 1;
      Walk w = to_walk(pf.vertices.front(), pf.edges, origin);
      // the last network edge is a half of e, so the walk ends across e
      VertexId before_mid = pf.vertices[pf.vertices.size() - 2];
      Walk wx = w;
      if (xm[before_mid]) wx.edges.pop_back();
      tstar.push_back(pf.vertices.front());
      gamma1.push_back(e);
      p1.push_back(w);
      p1_to_x.push_back(wx);
    }
    if (static_cast<long>(gamma1.size()) < q) throw InternalError("step 1 found fewer distinct edges than ceil(k/4)");

    // step 2: Gamma_1 to Gamma_j inside G'[X]
    std::vector<EdgeId> rest;
    for (EdgeId e : gamma)
      if (!used[e]) rest.push_back(e);
    std::vector<std::vector<EdgeId>> groups{gamma1};
    std::vector<std::vector<Walk>> systems{p1};
    bool repartitioned = false;
    for (long j = 1; j < p.r; ++j) {
      std::vector<EdgeId> gj(rest.begin() + (j - 1) * q, rest.begin() + j * q);
      CapGraph n2(n);
      std::vector<EdgeId> org2;
      for (EdgeId e = 0; e < gp.num_edges(); ++e) {
        const Edge& ed = gp.edge(e);
        if (xm[ed.u] && xm[ed.v]) {
          n2.add_edge(ed.u, ed.v, ed.cap);
          org2.push_back(e);
        }
      }
      auto x_end = [&](EdgeId e) { return xm[gp.edge(e).u] ? gp.edge(e).u : gp.edge(e).v; };
      std::vector<VertexId> srcs, snks;
      std::map<VertexId, int> src_of;
      for (std::size_t i = 0; i < gamma1.size(); ++i) {
        VertexId a = n2.add_vertex();
        n2.add_edge(a, x_end(gamma1[i]), 1);
        org2.push_back(gamma1[i]);
        srcs.push_back(a);
        src_of[a] = static_cast<int>(i);
      }
      for (EdgeId f : gj) {
        VertexId b = n2.add_vertex();
        n2.add_edge(x_end(f), b, 1);
        org2.push_back(f);
        snks.push_back(b);
      }
      Q val;
      auto p2 = max_flow_paths(n2, srcs, snks, &val);
      if (val >= q) {
        std::vector<Walk> sys(gamma1.size());
        for (const PathFlow& pf : p2) {
          int i = src_of.at(pf.vertices.front());
          Walk inner{x_end(gamma1[i]), {}};
          for (std::size_t t = 1; t < pf.edges.size(); ++t) inner.edges.push_back(org2[pf.edges[t]]);
          sys[i] = concat(gp, p1_to_x[i], inner);
        }
        groups.push_back(gj);
        systems.push_back(sys);
        continue;
      }
      auto cut2 = max_flow(n2, srcs, snks);
      std::vector<VertexId> a, b;
      for (VertexId v : x) (cut2.cut.side[v] ? a : b).push_back(v);
      std::vector<VertexId> x2 = a.size() <= b.size() ? b : a;
      std::vector<VertexId> y2 = y;
      const auto& other = a.size() <= b.size() ? a : b;
      y2.insert(y2.end(), other.begin(), other.end());
      if (!repartition(x2, y2, "step2: group " + std::to_string(j + 1)))
        return finish(RefineOutcome::Kind::Inconclusive, "inconclusive");
      repartitioned = true;
      break;
    }
    if (repartitioned) continue;

    // step 3: is X well-linked for the chosen edges?
    std::vector<EdgeId> all;
    for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
    auto inst = subdivide_boundary(gp, x, all);
    CutCertificate c;
    bool certified = attachment_count(inst) <= opt.cut.budget;
    c = certified ? sparsest_cut_exact(inst, opt.cut) : sparsest_cut_heuristic(inst);
    if (!c.infinite && !c.trivial_cluster) {
      std::vector<VertexId> a, b;
      for (int i = 0; i < inst.num_inner; ++i) (c.side[i] ? a : b).push_back(inst.inner_to_orig[i]);
      auto am = mask_of(n, a), bm = mask_of(n, b);
      long eab = edges_between(gp, am, bm);
      long ta = 0, tb = 0;
      for (EdgeId e : all) {
        const Edge& ed = gp.edge(e);
        ((am[ed.u] || am[ed.v]) ? ta : tb) += 1;
      }
      if (eab < std::min(ta, tb)) {
        std::vector<VertexId> x2 = a.size() >= b.size() ? a : b;
        std::vector<VertexId> y2 = y;
        const auto& other = a.size() >= b.size() ? b : a;
        y2.insert(y2.end(), other.begin(), other.end());
        if (!repartition(x2, y2, "step3: sparse cut of X"))
          return finish(RefineOutcome::Kind::Inconclusive, "inconclusive");
        continue;
      }
    }
    Witness w;
    w.kind = 2;
    w.a = x;
    w.tstar = tstar;
    w.groups = groups;
    w.paths = systems;
    w.alpha = {c.infinite || c.trivial_cluster ? Q(1) : c.sparsity};
    w.alpha_certified = {static_cast<char>(certified)};
    out.witness = std::move(w);
    return finish(RefineOutcome::Kind::Witness, "witness");
  }
  throw InternalError("balanced_cut_refine exceeded |E(G')| iterations");
}

SearchOutcome find_contractible_or_witness(const CapGraph& gp, const FlowParams& p, const FlowBuildOptions& opt,
                                           FlowBuildLog& log, int depth) {
  const long k = gp.k();
  const long h = ceil_half(k);
  for (VertexId t : gp.terminals())
    if (gp.incident(t).size() != 1 || gp.degree(t) != 1)
      throw InputError("witness search needs degree-1 unit terminals");
  for (const Edge& e : gp.edges())
    if (e.cap != 1) throw InputError("witness search needs unit capacities");
  std::vector<VertexId> r_all = non_terminals(gp);
  if (mpz_class(static_cast<long>(r_all.size())) <= p.F(k))
    throw ParamError("witness search needs more than F(k) non-terminals");

  SearchEvent ev;
  ev.depth = depth;
  ev.k = k;
  ev.n_nonterminal = static_cast<long>(r_all.size());
  ev.largest_needed = p.phase2_mult * p.F(h);
  SearchOutcome out;
  auto finish = [&](SearchOutcome::Kind kind, std::string name) {
    if (kind == SearchOutcome::Kind::Inconclusive) {
      auto set = scan_contractible(gp, k, p);
      if (!set.empty()) {
        kind = SearchOutcome::Kind::Contractible;
        name = "contractible-scan";
        out.set = std::move(set);
        out.detail = "min-cut scan after: " + out.detail;
      }
    }
    out.kind = kind;
    ev.outcome = name;
    ev.detail = out.detail;
    log.searches.push_back(ev);
    return out;
  };

  // phase 1
  std::vector<std::vector<VertexId>> family{r_all};
  long rounds = static_cast<long>(std::ceil(std::log2(static_cast<double>(p.r))));
  mpz_class refine_needed = p.refine_mult * p.F(h);
  long carried = 0;
  for (long round = 0; round < rounds; ++round) {
    std::vector<std::vector<VertexId>> next;
    for (const auto& s : family) {
      if (mpz_class(static_cast<long>(s.size())) <= refine_needed) {
        next.push_back(s);
        ++carried;
        continue;
      }
      RefineOutcome ro = balanced_cut_refine(gp, s, p, opt, log, depth);
      switch (ro.kind) {
        case RefineOutcome::Kind::Partition:
          next.push_back(ro.x);
          next.push_back(ro.y);
          break;
        case RefineOutcome::Kind::Witness:
          out.witness = std::move(ro.witness);
          out.detail = "type-2 witness from balanced-cut refinement";
          return finish(SearchOutcome::Kind::Witness, "witness2");
        case RefineOutcome::Kind::Contractible:
          out.set = ro.set;
          out.detail = "contractible set from balanced-cut refinement";
          return finish(SearchOutcome::Kind::Contractible, "contractible");
        case RefineOutcome::Kind::Inconclusive:
          out.detail = "refinement: " + ro.detail;
          return finish(SearchOutcome::Kind::Inconclusive, "inconclusive");
      }
    }
    family = std::move(next);
  }
  std::stable_sort(family.begin(), family.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  if (static_cast<long>(family.size()) < p.r) {
    out.detail = "phase 1 left " + std::to_string(family.size()) + " sets for r=" + std::to_string(p.r) + " (" +
                 std::to_string(carried) + " carried unsplit)";
    return finish(SearchOutcome::Kind::Inconclusive, "inconclusive");
  }

  // phase 2
  DecompOptions dopt;
  dopt.cut = opt.cut;
  dopt.weak_mult = p.weak_mult;
  // a contractible weak cluster in any set beats a witness
  std::vector<Decomposition> decs;
  for (std::size_t j = 0; j < family.size(); ++j) {
    decs.push_back(weak_decompose(gp, family[j], dopt));
    for (const ClusterCert& c : decs.back().clusters)
      if (is_contractible(gp, c.vertices, k, p)) {
        out.set = c.vertices;
        out.detail = "weak cluster of set " + std::to_string(j + 1);
        return finish(SearchOutcome::Kind::Contractible, "contractible");
      }
  }
  Witness w;
  w.kind = 1;
  for (long j = 0; j < p.r; ++j) {
    const ClusterCert* best = nullptr;
    for (const ClusterCert& c : decs[j].clusters)
      if (!best || c.vertices.size() > best->vertices.size()) best = &c;
    const auto& sj = best->vertices;
    ev.largest_cluster.push_back(static_cast<long>(sj.size()));
    auto mf = max_flow(gp, gp.terminals(), sj);
    if (mf.value < h) {
      std::vector<VertexId> bp;
      auto sm = mask_of(gp.num_vertices(), sj);
      for (VertexId v = 0; v < gp.num_vertices(); ++v)
        if (!gp.is_terminal(v) && (!mf.cut.side[v] || sm[v])) bp.push_back(v);
      for (const auto& comp : induced_components(gp, bp)) {
        if (!std::binary_search(comp.begin(), comp.end(), sj[0])) continue;
        if (is_contractible(gp, comp, k, p)) {
          out.set = comp;
          out.detail = "sink side of a short terminal flow into set " + std::to_string(j + 1);
          return finish(SearchOutcome::Kind::Contractible, "contractible");
        }
      }
      out.detail = "short terminal flow into set " + std::to_string(j + 1) + " without a contractible sink side";
      return finish(SearchOutcome::Kind::Inconclusive, "inconclusive");
    }
    auto sm = mask_of(gp.num_vertices(), sj);
    auto paths = max_flow_paths(gp, gp.terminals(), sj);
    std::vector<Walk> sys;
    std::vector<EdgeId> ends;
    for (const PathFlow& pf : paths) {
      if (static_cast<long>(sys.size()) >= h) break;
      Walk x{pf.vertices.front(), {}};
      for (std::size_t i = 0; i < pf.edges.size(); ++i) {
        x.edges.push_back(pf.edges[i]);
        if (sm[pf.vertices[i + 1]]) break;
      }
      ends.push_back(x.edges.back());
      sys.push_back(std::move(x));
    }
    w.sets.push_back(sj);
    w.groups.push_back(ends);
    w.paths.push_back(std::move(sys));
  }
  out.witness = std::move(w);
  out.detail = "type-1 witness";
  return finish(SearchOutcome::Kind::Witness, "witness1");
}

RouterSparsifier build_flow_sparsifier_well_linked(const CapGraph& g, const FlowBuildOptions& opt) {
  if (!g.is_integral()) throw ParamError("flow sparsifier needs integral capacities");
  long k = level_k(g);
  FlowBuildLog log;
  Ctx ctx{g, make_flow_params(k, opt.params), make_flow_params(k, theoretical_of(opt.params)), opt, log, {}};
  for (VertexId t : g.terminals())
    if (g.degree(t) != 1) {
      ctx.note(0, "terminal degrees above 1 are split into unit terminals");
      break;
    }
  std::vector<VertexId> to_top(g.num_vertices(), -1);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!g.is_terminal(v)) to_top[v] = v;
  auto clusters = build_level(ctx, g, to_top, 0);
  RouterSparsifier out = finalize(ctx, g, clusters);
  out.cap_limit = g.terminal_capacity();
  out.log = std::move(log);
  return out;
}

RouterSparsifier build_flow_sparsifier_unit(const CapGraph& g, const FlowBuildOptions& opt) {
  if (!g.is_integral()) throw ParamError("unit flow sparsifier needs integral capacities");
  long k = level_k(g);
  FlowBuildLog log;
  Ctx ctx{g, make_flow_params(k, opt.params), make_flow_params(k, theoretical_of(opt.params)), opt, log, {}};
  DecompOptions dopt;
  dopt.cut = opt.cut;
  std::vector<std::vector<VertexId>> clusters;
  std::vector<Decomposition> decs;
  for (const auto& comp : induced_components(g, non_terminals(g))) {
    auto d = strong_decompose(g, comp, dopt);
    for (const ClusterCert& x : d.clusters) {
      auto inst = subdivide_boundary(g, x.vertices);
      std::vector<VertexId> tx(inst.g.num_vertices(), -1);
      for (int i = 0; i < inst.num_inner; ++i) tx[i] = inst.inner_to_orig[i];
      for (const auto& c : build_level(ctx, inst.g, tx, 0)) {
        std::vector<VertexId> back;
        for (VertexId v : c) back.push_back(inst.inner_to_orig[v]);
        clusters.push_back(sorted(back));
      }
    }
    decs.push_back(std::move(d));
  }
  // one more pass over the whole contracted graph: the per-cluster loops only
  // bound each cluster by its own F(|out X|)
  Contracted gp = contract(g, clusters);
  if (mpz_class(static_cast<long>(gp.h.num_vertices() - gp.h.k())) > ctx.p.F(k)) {
    if (auto lv = unitize(g, opt.unitize_limit)) {
      std::vector<VertexId> local(g.num_vertices(), -1);
      for (VertexId v = 0; v < lv->g.num_vertices(); ++v)
        if (lv->to_parent[v] >= 0) local[lv->to_parent[v]] = v;
      std::vector<std::vector<VertexId>> cu;
      for (const auto& c : clusters) {
        std::vector<VertexId> x;
        for (VertexId v : c) x.push_back(local[v]);
        cu.push_back(sorted(x));
      }
      auto r_top = non_terminals(g);
      contraction_loop(ctx, *lv, lv->to_parent, cu, k, 0, induced_connected(g, r_top), r_top);
      clusters.clear();
      for (const auto& c : cu) {
        std::vector<VertexId> b;
        for (VertexId v : c) b.push_back(lv->to_parent[v]);
        clusters.push_back(sorted(b));
      }
    } else {
      ctx.note(0, "k=" + std::to_string(k) + ": too many unit edges for the whole-graph pass");
    }
  }
  RouterSparsifier out = finalize(ctx, g, clusters);
  out.cap_limit = g.terminal_capacity();
  out.decompositions = std::move(decs);
  out.log = std::move(log);
  return out;
}

RouterSparsifier build_flow_sparsifier(const CapGraph& g, const Q& eps, const FlowBuildOptions& opt) {
  if (eps <= 0 || eps >= 1) throw ParamError("epsilon must lie in (0,1)");
  for (const Edge& e : g.edges())
    if (e.cap < 1) throw ParamError("capacities must be at least 1");
  Q two_eta = 68;
  auto ux = unit_expand(g, eps / two_eta);
  RouterSparsifier out = build_flow_sparsifier_unit(ux.g, opt);
  for (EdgeId e = 0; e < out.h.num_edges(); ++e) out.h.set_capacity(e, out.h.edge(e).cap * eps / two_eta);
  out.claimed_q = two_eta + eps;
  out.eps = eps;
  out.cap_limit = ux.cap_limit;
  return out;
}

RouterCert certify_router(const CapGraph& g, const std::vector<VertexId>& cluster, const RouterOptions& opt) {
  auto res = is_good_router(g, cluster, opt);
  RouterCert rc;
  rc.vertices = sorted(cluster);
  rc.well_linked = res.well_linked.well_linked;
  rc.wl_certified = res.well_linked.certified;
  const CutCertificate& cut = res.well_linked.cut;
  rc.wl_sparsity = cut.infinite || cut.trivial_cluster ? Q(1) : cut.sparsity;
  rc.z = res.route.z;
  rc.eta = res.route.eta;
  rc.lower = res.route.lower;
  rc.flow = res.route.flow;
  rc.method = res.route.method;
  return rc;
}

// ---- constructive reroute ----

namespace {

struct InnerPath {
  Q share;  // fraction of the pair's traffic
  std::vector<std::pair<EdgeId, int>> edges;  // cert-graph edge, +1 along u->v
};

struct ClusterRoutes {
  int n_buckets = 0;
  std::vector<Q> cap;  // bucket capacity
  Q z = 0;
  std::map<EdgeId, int> bucket_of;  // boundary edge -> bucket
  // paths oriented from the smaller bucket index to the larger
  std::map<std::pair<int, int>, std::vector<InnerPath>> paths;
};

ClusterRoutes cluster_routes(const CapGraph& g, const RouterCert& cert) {
  ClusterRoutes cr;
  auto inst = subdivide_boundary(g, cert.vertices);
  cr.n_buckets = inst.g.k();
  cr.z = cert.z;
  for (int i = 0; i < cr.n_buckets; ++i) {
    EdgeId e = inst.terminal_edge[i];
    cr.cap.push_back(g.edge(e).cap);
    cr.bucket_of[e] = i;
  }
  std::map<std::pair<int, int>, Q> total;
  for (const Commodity& c : cert.flow.commodities) {
    int a = inst.g.terminal_index(c.source);
    for (PathFlow& pf : decompose_paths(inst.g, c)) {
      int b = inst.g.terminal_index(pf.vertices.back());
      if (a < 0 || b < 0) throw InternalError("router flow path does not join two boundary buckets");
      InnerPath ip;
      ip.share = pf.amount;
      for (std::size_t i = 0; i < pf.edges.size(); ++i) {
        EdgeId se = pf.edges[i];
        const Edge& sed = inst.g.edge(se);
        if (inst.g.is_terminal(sed.u) || inst.g.is_terminal(sed.v)) continue;  // pendant = the boundary edge
        EdgeId ge = inst.edge_to_orig[se];
        VertexId from = inst.inner_to_orig[pf.vertices[i]];
        ip.edges.emplace_back(ge, g.edge(ge).u == from ? 1 : -1);
      }
      if (a > b) {
        std::reverse(ip.edges.begin(), ip.edges.end());
        for (auto& [e, sgn] : ip.edges) sgn = -sgn;
      }
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      total[key] += ip.share;
      cr.paths[key].push_back(std::move(ip));
    }
  }
  for (auto& [key, ps] : cr.paths)
    for (InnerPath& ip : ps) ip.share /= total[key];
  return cr;
}

// amount from bucket a to bucket b inside the cluster
void route_pair(const ClusterRoutes& cr, int a, int b, const Q& amount, std::vector<Q>& flow) {
  if (a == b || amount == 0) return;
  std::pair<int, int> key{std::min(a, b), std::max(a, b)};
  auto it = cr.paths.find(key);
  if (it == cr.paths.end()) throw InternalError("router certificate has no flow between two buckets");
  int dir = a < b ? 1 : -1;
  for (const InnerPath& ip : it->second) {
    Q x = amount * ip.share;
    for (const auto& [e, sgn] : ip.edges) flow[e] += sgn * dir > 0 ? x : Q(-x);
  }
}

}  // namespace

Reroute reroute_through_clusters(const RouterSparsifier& s, const FlowSolution& h_flow) {
  const CapGraph& g = s.cert_graph;
  const CapGraph& h = s.h;
  const ContractionMap& m = s.map;
  Reroute out;
  out.eta_h = congestion(h, h_flow);
  std::vector<int> cluster_at(h.num_vertices(), -1);
  for (std::size_t c = 0; c < m.supernode.size(); ++c) cluster_at[m.supernode[c]] = static_cast<int>(c);
  std::vector<ClusterRoutes> routes;
  for (const RouterCert& rc : s.certs) routes.push_back(cluster_routes(g, rc));
  std::vector<std::map<EdgeId, Q>> traffic(s.certs.size());

  for (const Commodity& hc : h_flow.commodities) {
    Commodity c;
    c.source = m.preimage[hc.source][0];
    for (const auto& [t, amt] : hc.sinks) c.sinks.emplace_back(m.preimage[t][0], amt);
    c.flow.assign(g.num_edges(), Q(0));
    for (const PathFlow& pf : decompose_paths(h, hc)) {
      const Q& d = pf.amount;
      for (std::size_t i = 0; i < pf.edges.size(); ++i) {
        EdgeId ge = m.h_edge_origin[pf.edges[i]];
        bool along = m.vertex_map[g.edge(ge).u] == pf.vertices[i];
        c.flow[ge] += along ? d : Q(-d);
      }
      for (std::size_t i = 1; i + 1 < pf.vertices.size(); ++i) {
        int cl = cluster_at[pf.vertices[i]];
        if (cl < 0) continue;
        const ClusterRoutes& cr = routes[cl];
        EdgeId ein = m.h_edge_origin[pf.edges[i - 1]], eout = m.h_edge_origin[pf.edges[i]];
        int bin = cr.bucket_of.at(ein), bout = cr.bucket_of.at(eout);
        traffic[cl][ein] += d;
        traffic[cl][eout] += d;
        for (int b = 0; b < cr.n_buckets; ++b) {
          Q part = d * cr.cap[b] / cr.z;
          route_pair(cr, bin, b, part, c.flow);
          route_pair(cr, b, bout, part, c.flow);
        }
      }
    }
    out.flow.commodities.push_back(std::move(c));
  }
  std::string why;
  if (!conserves(g, out.flow, &why)) throw InternalError("rerouted flow does not conserve: " + why);
  out.eta = congestion(g, out.flow);
  auto loads = edge_loads(g, out.flow);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (m.cluster_of[g.edge(e).u] < 0 || m.cluster_of[g.edge(e).u] != m.cluster_of[g.edge(e).v]) continue;
    Q x = loads[e] / g.edge(e).cap;
    if (x > out.inner_eta) out.inner_eta = x;
  }
  if (out.eta_h > 0)
    for (const auto& per : traffic)
      for (const auto& [e, t] : per) {
        Q x = t / (out.eta_h * h.edge(m.edge_map[e]).cap);
        if (x > out.restriction) out.restriction = x;
      }
  return out;
}

}  // namespace vsp
