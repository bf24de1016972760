#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vsparse/errors.hpp"
#include "vsparse/generators.hpp"
#include "vsparse/sparsest_cut.hpp"

using namespace vsp;

namespace {

// G[S] plus pendant neighbours outside S; S = 0..inner-1.
SubdividedInstance with_pendants(const CapGraph& inner_graph, const std::vector<VertexId>& attach_at) {
  CapGraph g = inner_graph;
  int n = inner_graph.num_vertices();
  for (VertexId v : attach_at) g.add_edge(v, g.add_vertex(), 1);
  std::vector<VertexId> s(n);
  for (int i = 0; i < n; ++i) s[i] = i;
  return subdivide_boundary(g, s);
}

CapGraph path_graph(int n) {
  CapGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
  return g;
}

CapGraph clique(int n) {
  CapGraph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b, 1);
  return g;
}

void check_certificate(const SubdividedInstance& inst, const CutCertificate& c) {
  REQUIRE(!c.infinite);
  Q value = 0, wa = 0, wb = 0;
  for (const auto& e : inst.g.edges())
    if (c.side[e.u] != c.side[e.v]) value += e.cap;
  for (VertexId t : inst.g.terminals()) (c.side[t] ? wa : wb) += inst.g.degree(t);
  CHECK(value == c.value);
  CHECK(wa == c.weight_a);
  CHECK(wb == c.weight_b);
  CHECK(c.sparsity == value / std::min(wa, wb));
}

}  // namespace

TEST_CASE("sparsest_cut_exact on hand-sized instances") {
  SUBCASE("one inner vertex, two pendants") {
    auto inst = with_pendants(CapGraph(1), {0, 0});
    auto c = sparsest_cut_exact(inst);
    CHECK(c.sparsity == 1);
    CHECK(c.trivial_cluster);
  }
  SUBCASE("two triangles joined by a bridge, two pendants per side") {
    CapGraph g(6);
    for (int h = 0; h < 2; ++h) {
      g.add_edge(3 * h, 3 * h + 1, 1);
      g.add_edge(3 * h + 1, 3 * h + 2, 1);
      g.add_edge(3 * h, 3 * h + 2, 1);
    }
    g.add_edge(2, 3, 1);
    auto inst = with_pendants(g, {0, 1, 4, 5});
    auto c = sparsest_cut_exact(inst);
    CHECK(c.sparsity == Q(1, 2));
    CHECK(c.value == 1);
    CHECK(c.side[2] != c.side[3]);
    CHECK(oracle::sparsest_enum(inst.g).sparsity == Q(1, 2));
    check_certificate(inst, c);
    auto h = sparsest_cut_heuristic(inst);
    CHECK(h.sparsity == Q(1, 2));
  }
  SUBCASE("fewer than two terminals has no split") {
    auto inst = with_pendants(path_graph(3), {1});
    CHECK(sparsest_cut_exact(inst).infinite);
    CHECK(sparsest_cut_heuristic(inst).infinite);
  }
  SUBCASE("budget refusal") {
    auto inst = with_pendants(path_graph(6), {0, 1, 2, 3, 4, 5});
    SparsestCutOptions tight;
    tight.budget = 5;
    CHECK_THROWS_AS(sparsest_cut_exact(inst, tight), BudgetRefusal);
  }
}

TEST_CASE("sparsest_cut_exact matches exhaustive vertex bipartitions") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 80; ++it) {
    int n = 2 + int(rng() % 9);
    auto inner = gen_random_unit(n, n + int(rng() % 8), 0, 1, 1000 + it);
    if (it % 3 == 0)
      for (EdgeId e = 0; e < inner.num_edges(); ++e) inner.set_capacity(e, Q(1 + int(rng() % 3)));
    std::vector<VertexId> at;
    int z = 2 + int(rng() % 6);
    for (int i = 0; i < z; ++i) at.push_back(int(rng() % n));
    auto inst = with_pendants(inner, at);
    auto c = sparsest_cut_exact(inst);
    auto o = oracle::sparsest_enum(inst.g);
    REQUIRE(o.defined);
    CHECK(c.sparsity == o.sparsity);
    check_certificate(inst, c);
    auto h = sparsest_cut_heuristic(inst, it);
    check_certificate(inst, h);
    CHECK(h.sparsity >= c.sparsity);
  }
}

TEST_CASE("bucketed terminals agree with explicit parallel edges") {
  std::mt19937_64 rng(4);
  for (int it = 0; it < 20; ++it) {
    int n = 3 + int(rng() % 4);
    auto g = gen_random_unit(n, n + 3, 0, 1, 1300 + it);
    CapGraph bucketed = g, explicit_g = g;
    std::vector<VertexId> s(n);
    for (int i = 0; i < n; ++i) s[i] = i;
    for (int i = 0; i < 3; ++i) {
      VertexId at = int(rng() % n);
      int mult = 1 + int(rng() % 3);
      bucketed.add_edge(at, bucketed.add_vertex(), mult);
      VertexId out = explicit_g.add_vertex();
      for (int j = 0; j < mult; ++j) explicit_g.add_edge(at, out, 1);
    }
    auto b = sparsest_cut_exact(subdivide_boundary(bucketed, s));
    auto x = sparsest_cut_exact(subdivide_boundary(explicit_g, s));
    // identical below 1; the explicit form can always reach exactly 1
    CHECK(std::min(b.sparsity, Q(1)) == std::min(x.sparsity, Q(1)));
  }
}

TEST_CASE("is_well_linked on cliques and paths at the 1/3 threshold") {
  Q third(1, 3);
  CHECK(is_well_linked(with_pendants(clique(4), {0, 1, 2, 3}), third).well_linked);
  CHECK(is_well_linked(with_pendants(path_graph(6), {0, 5}), third).well_linked);
  // six vertices sit exactly on the threshold: the middle edge has 1/min(3,3)
  auto six = with_pendants(path_graph(6), {0, 1, 2, 3, 4, 5});
  CHECK(sparsest_cut_exact(six).sparsity == third);
  CHECK(is_well_linked(six, third).well_linked);
  CHECK(!is_well_linked(six, Q(2, 5)).well_linked);
  auto every = with_pendants(path_graph(8), {0, 1, 2, 3, 4, 5, 6, 7});
  auto r = is_well_linked(every, third);
  CHECK(!r.well_linked);
  CHECK(r.cut.sparsity == Q(1, 4));
  auto single = with_pendants(CapGraph(1), {0, 0, 0});
  CHECK(is_well_linked(single, Q(5)).well_linked);
  CHECK(is_well_linked(single, Q(1000)).certified);
}

TEST_CASE("heuristic beyond the budget can refute but not certify") {
  auto every = with_pendants(path_graph(30), std::vector<VertexId>{0, 3, 6, 9, 12, 15, 18, 21, 24, 27, 29});
  SparsestCutOptions tight;
  tight.budget = 4;
  auto r = is_well_linked(every, Q(1, 3), tight, true);
  CHECK(!r.well_linked);
  CHECK(r.certified);
  auto k6 = with_pendants(clique(6), {0, 1, 2, 3, 4, 5});
  auto q = is_well_linked(k6, Q(1, 3), tight, true);
  CHECK(!q.well_linked);
  CHECK(!q.certified);
  CHECK_THROWS_AS(is_well_linked(k6, Q(1, 3), tight, false), BudgetRefusal);
}
