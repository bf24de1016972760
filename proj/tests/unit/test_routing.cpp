#include <doctest.h>

#include "oracles.hpp"
#include "vsparse/generators.hpp"
#include "vsparse/lp.hpp"
#include "vsparse/routing.hpp"

using namespace vsp;

namespace {

CapGraph single_edge() {
  CapGraph g(2);
  g.add_edge(0, 1, 1);
  g.add_terminal(0);
  g.add_terminal(1);
  return g;
}

}  // namespace

TEST_CASE("simplex on textbook problems") {
  // min -x - y s.t. x + 2y <= 4, 3x + y <= 6  -> x = 8/5, y = 6/5
  LpProblem<Q> lp;
  lp.num_vars = 2;
  lp.cost = {-1, -1};
  lp.rows.push_back({{{0, 1}, {1, 2}}, RowSense::LE, 4});
  lp.rows.push_back({{{0, 3}, {1, 1}}, RowSense::LE, 6});
  auto s = solve_lp_exact(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[0] == Q(8, 5));
  CHECK(s.x[1] == Q(6, 5));
  CHECK(s.objective == Q(-14, 5));
  // duals satisfy y.b = objective
  CHECK(s.dual[0] * 4 + s.dual[1] * 6 == s.objective);

  LpProblem<double> fl;
  fl.num_vars = 2;
  fl.cost = {-1, -1};
  fl.rows.push_back({{{0, 1}, {1, 2}}, RowSense::LE, 4});
  fl.rows.push_back({{{0, 3}, {1, 1}}, RowSense::LE, 6});
  auto f = solve_lp_float(fl);
  CHECK(f.objective == doctest::Approx(-2.8));

  // infeasible: x >= 2, x <= 1
  LpProblem<Q> bad;
  bad.num_vars = 1;
  bad.cost = {0};
  bad.rows.push_back({{{0, 1}}, RowSense::GE, 2});
  bad.rows.push_back({{{0, 1}}, RowSense::LE, 1});
  CHECK(solve_lp_exact(bad).status == LpStatus::Infeasible);

  // unbounded: min -x
  LpProblem<Q> unb;
  unb.num_vars = 1;
  unb.cost = {-1};
  unb.rows.push_back({{{0, 1}}, RowSense::GE, 0});
  CHECK(solve_lp_exact(unb).status == LpStatus::Unbounded);
}

TEST_CASE("min_congestion_routing on an edge, a 4-cycle and a disconnected pair") {
  auto g = single_edge();
  DemandSet d(2);
  d.set(0, 1, 1);
  CHECK(min_congestion_routing(g, d).eta == 1);
  d.set(0, 1, 2);
  CHECK(min_congestion_routing(g, d).eta == 2);

  CapGraph cyc(4);
  for (int i = 0; i < 4; ++i) cyc.add_edge(i, (i + 1) % 4, 1);
  cyc.add_terminal(0);
  cyc.add_terminal(2);
  DemandSet dc(2);
  dc.set(0, 1, 2);
  for (auto m : {RoutingOptions::Method::Exact, RoutingOptions::Method::Float}) {
    RoutingOptions o;
    o.method = m;
    auto r = min_congestion_routing(cyc, dc, o);
    CHECK(r.eta == 1);
    CHECK(r.lower == 1);
    CHECK(conserves(cyc, r.flow));
  }

  CapGraph apart(4);
  apart.add_edge(0, 1, 1);
  apart.add_edge(2, 3, 1);
  apart.add_terminal(0);
  apart.add_terminal(3);
  DemandSet da(2);
  da.set(0, 1, 1);
  CHECK(min_congestion_routing(apart, da).infinite);
}

TEST_CASE("edge-formulation LP agrees with the path-formulation oracle") {
  for (int it = 0; it < 25; ++it) {
    auto g = it % 2 ? gen_random_capacitated(4, 6, 3, 1, 70 + it) : gen_random_unit(4, 6, 3, 1, 70 + it);
    DemandSet d(3);
    d.set(0, 1, Q(1 + it % 3));
    d.set(1, 2, Q(1, 2));
    if (it % 2) d.set(0, 2, Q(3, 4));
    Q oracle_eta = oracle::congestion_path_lp(g, d);
    RoutingOptions ex;
    ex.method = RoutingOptions::Method::Exact;
    auto r = min_congestion_routing(g, d, ex);
    CHECK(r.eta == oracle_eta);
    CHECK(conserves(g, r.flow));
    CHECK(congestion(g, r.flow) == r.eta);
    RoutingOptions fl;
    fl.method = RoutingOptions::Method::Float;
    auto rf = min_congestion_routing(g, d, fl);
    CHECK(rf.certified());
    CHECK(rf.lower <= oracle_eta);
    CHECK(rf.eta >= oracle_eta);
    CHECK(rf.eta.get_d() <= oracle_eta.get_d() * (1 + 2e-6));
    CHECK(conserves(g, rf.flow));
  }
}

TEST_CASE("multiplicative weights brackets the optimum") {
  for (int it = 0; it < 5; ++it) {
    auto g = gen_random_unit(6, 10, 4, 1, 150 + it);
    DemandSet d(4);
    d.set(0, 1, 1);
    d.set(2, 3, 1);
    d.set(0, 3, Q(1, 2));
    RoutingOptions ex;
    ex.method = RoutingOptions::Method::Exact;
    Q opt = min_congestion_routing(g, d, ex).eta;
    RoutingOptions mw;
    mw.method = RoutingOptions::Method::Mwu;
    mw.delta = 0.05;
    auto r = min_congestion_routing(g, d, mw);
    CHECK(conserves(g, r.flow));
    CHECK(r.eta >= opt);
    CHECK(r.lower <= opt);
    CHECK(r.eta.get_d() <= opt.get_d() * 1.5);
  }
}

TEST_CASE("shortest path routing is feasible") {
  auto g = gen_grid(3, 3, 4, 1);
  std::vector<VertexDemand> dem{{g.terminals()[0], g.terminals()[1], 1},
                                {g.terminals()[2], g.terminals()[3], Q(1, 3)}};
  auto f = shortest_path_routing(g, dem);
  CHECK(conserves(g, f));
}

TEST_CASE("approx_rational recovers small fractions") {
  CHECK(approx_rational(1.0 / 3.0) == Q(1, 3));
  CHECK(approx_rational(0.75) == Q(3, 4));
  CHECK(approx_rational(-2.5) == Q(-5, 2));
  CHECK(approx_rational(0.0) == 0);
}
