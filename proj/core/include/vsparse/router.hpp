#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsparse/routing.hpp"
#include "vsparse/sparsest_cut.hpp"

namespace vsp {

// Demands of the good-router test on G_S: every pair of unit boundary edges
// sends 1/z to each other, so an unordered pair of buckets (capacities c, c')
// exchanges 2cc'/z in total. Pairs inside one bucket never leave its pendant
// edge; they appear as extra_load 2c(c-1)/z on that edge.
struct RouterDemands {
  std::vector<VertexDemand> pairs;  // between terminal vertices of inst.g
  std::vector<Q> extra_load;        // per edge of inst.g
  Q z = 0;
};
RouterDemands router_demands(const SubdividedInstance& inst);

struct RouterCheck {
  bool ok = false;       // congestion <= bound established
  bool decided = false;  // ok, or a lower bound above the bound
  Q eta = 0;             // exact congestion of flow (with extra load)
  Q lower = 0;
  Q z = 0;
  FlowSolution flow;     // on subdivide_boundary(G, S).g
  std::string method;    // shortest-path | lp method name
};

// Shortest-path routing first; if that exceeds the bound, the LP.
RouterCheck uniform_router_check(const CapGraph& g, std::span<const VertexId> s, const Q& bound,
                                 const RoutingOptions& opt = {});
RouterCheck uniform_router_check(const SubdividedInstance& inst, const Q& bound,
                                 const RoutingOptions& opt = {});

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct GoodRouterResult {
  Verdict verdict = Verdict::Unknown;
  WellLinkedCheck well_linked;  // at alpha 1/3
  RouterCheck route;            // empty when well-linkedness already failed
};

struct RouterOptions {
  Q eta_star = 34;
  SparsestCutOptions cut;
  RoutingOptions routing;
  // past the exact budget the heuristic can still refute
  bool allow_heuristic = true;
};

// 1/3-well-linked and uniform_router_check at eta_star. Unknown (budget hit
// with no refutation, or an LP gap straddling the bound) counts as "no" for
// every caller.
GoodRouterResult is_good_router(const CapGraph& g, std::span<const VertexId> s,
                                const RouterOptions& opt = {});

}  // namespace vsp
