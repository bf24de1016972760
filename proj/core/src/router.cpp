#include "vsparse/router.hpp"

#include "vsparse/errors.hpp"

namespace vsp {

RouterDemands router_demands(const SubdividedInstance& inst) {
  RouterDemands d;
  const CapGraph& g = inst.g;
  int nt = g.k();
  std::vector<Q> cap(nt);
  std::vector<EdgeId> pendant(nt);
  for (int i = 0; i < nt; ++i) {
    VertexId t = g.terminals()[i];
    if (g.incident(t).size() != 1) throw InternalError("G_S terminal without a single pendant edge");
    pendant[i] = g.incident(t)[0];
    cap[i] = g.edge(pendant[i]).cap;
    d.z += cap[i];
  }
  if (d.z == 0) return d;
  d.extra_load.assign(g.num_edges(), Q(0));
  for (int i = 0; i < nt; ++i) {
    d.extra_load[pendant[i]] = 2 * cap[i] * (cap[i] - 1) / d.z;
    for (int j = i + 1; j < nt; ++j)
      d.pairs.push_back({g.terminals()[i], g.terminals()[j], 2 * cap[i] * cap[j] / d.z});
  }
  return d;
}

namespace {

void attach_extra(FlowSolution& f, const RouterDemands& d) {
  bool any = false;
  for (const Q& x : d.extra_load) any = any || x != 0;
  if (any) f.extra_load = d.extra_load;
}

}  // namespace

RouterCheck uniform_router_check(const SubdividedInstance& inst, const Q& bound,
                                 const RoutingOptions& opt) {
  RouterCheck rc;
  auto d = router_demands(inst);
  rc.z = d.z;
  if (d.z == 0) {
    rc.ok = rc.decided = true;
    rc.method = "no-boundary";
    return rc;
  }
  // every unit of traffic at a bucket crosses its own pendant edge, so each
  // pendant carries exactly 2(z-1)/z per unit of capacity
  Q pendant_floor = 2 * (d.z - 1) / d.z;

  rc.flow = shortest_path_routing(inst.g, d.pairs);
  attach_extra(rc.flow, d);
  rc.eta = congestion(inst.g, rc.flow);
  rc.lower = pendant_floor;
  rc.method = "shortest-path";
  if (rc.eta <= bound) {
    rc.ok = rc.decided = true;
    return rc;
  }
  auto lp = route_demands(inst.g, d.pairs, opt);
  if (lp.infinite) {
    rc.ok = false;
    rc.decided = true;
    rc.method = "disconnected";
    rc.flow = {};
    return rc;
  }
  FlowSolution f = std::move(lp.flow);
  attach_extra(f, d);
  Q eta = congestion(inst.g, f);
  Q lower = lp.lower > pendant_floor ? lp.lower : pendant_floor;
  rc.method = lp.method;
  rc.lower = lower;
  if (eta < rc.eta) {
    rc.eta = eta;
    rc.flow = std::move(f);
  }
  rc.ok = rc.eta <= bound;
  rc.decided = rc.ok || rc.lower > bound;
  return rc;
}

RouterCheck uniform_router_check(const CapGraph& g, std::span<const VertexId> s, const Q& bound,
                                 const RoutingOptions& opt) {
  return uniform_router_check(subdivide_boundary(g, s), bound, opt);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

GoodRouterResult is_good_router(const CapGraph& g, std::span<const VertexId> s,
                                const RouterOptions& opt) {
  for (VertexId v : s)
    if (g.is_terminal(v)) throw InputError("router cluster contains a terminal");
  GoodRouterResult res;
  auto inst = subdivide_boundary(g, s);
  res.well_linked = is_well_linked(inst, frac(1, 3), opt.cut, opt.allow_heuristic);
  if (!res.well_linked.well_linked) {
    res.verdict = res.well_linked.certified ? Verdict::No : Verdict::Unknown;
    return res;
  }
  res.route = uniform_router_check(inst, opt.eta_star, opt.routing);
  if (res.route.ok)
    res.verdict = res.well_linked.certified ? Verdict::Yes : Verdict::Unknown;
  else
    res.verdict = res.route.decided ? Verdict::No : Verdict::Unknown;
  return res;
}

}  // namespace vsp
