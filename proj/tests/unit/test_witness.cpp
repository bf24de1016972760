#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vsparse/errors.hpp"
#include "vsparse/io.hpp"
#include "vsparse/witness.hpp"

using namespace vsp;

namespace {

std::string fixture(const std::string& name) { return std::string(VSPARSE_FIXTURES_DIR) + "/" + name; }

Witness load_witness(const std::string& name) {
  std::ifstream in(fixture(name));
  REQUIRE(in);
  return read_witness(in);
}

// Net amount commodity c delivers into v, summed straight from the edge flows.
Q net_in(const CapGraph& g, const Commodity& c, VertexId v) {
  Q s = 0;
  for (EdgeId e : g.incident(v)) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    s += ed.v == v ? c.flow[e] : Q(-c.flow[e]);
  }
  return s;
}

// Max over edges of sum_c |f_c(e)| / c_e, recomputed without edge_loads.
Q congestion_scan(const CapGraph& g, const FlowSolution& f) {
  Q worst = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Q load = 0;
    for (const Commodity& c : f.commodities) load += abs(c.flow[e]);
    if (load / g.edge(e).cap > worst) worst = load / g.edge(e).cap;
  }
  return worst;
}

// Every unordered terminal pair exchanges exactly `amount`.
void check_pair_exchange(const CapGraph& g, const FlowSolution& f, const Q& amount) {
  const auto& T = g.terminals();
  REQUIRE(f.commodities.size() == T.size() - 1);
  for (std::size_t a = 0; a + 1 < T.size(); ++a) {
    const Commodity& c = f.commodities[a];
    CHECK(c.source == T[a]);
    CHECK(net_in(g, c, T[a]) == -amount * static_cast<long>(T.size() - a - 1));
    for (std::size_t b = 0; b < T.size(); ++b) {
      if (b == a) continue;
      CHECK(net_in(g, c, T[b]) == (b > a ? amount : Q(0)));
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!g.is_terminal(v)) CHECK(net_in(g, c, v) == 0);
  }
}

CapGraph path_graph(int n) {
  // interior 0..n-1 on a path, terminal pendants on both ends
  CapGraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, 1);
  VertexId a = g.add_vertex(), b = g.add_vertex();
  g.add_edge(a, 0, 1);
  g.add_edge(b, n - 1, 1);
  g.add_terminal(a);
  g.add_terminal(b);
  return g;
}

}  // namespace

TEST_CASE("walks") {
  CapGraph g = path_graph(4);  // edges 0..2 interior, 3: t0-0, 4: t1-3
  Walk w{4, {3, 0, 1}};
  CHECK(walk_end(g, w) == 2);
  Walk x{2, {2, 4}};
  CHECK(walk_end(g, concat(g, w, x)) == 5);
  CHECK_THROWS_AS(walk_end(g, Walk{4, {1}}), InputError);
  CHECK_THROWS_AS(concat(g, x, w), InternalError);
}

TEST_CASE("one-to-one routing respects the multiplier") {
  // star: centre 0, leaves 1..3; all three leaves must reach leaf 1's edge
  CapGraph g(4);
  for (int i = 1; i <= 3; ++i) g.add_edge(0, i, 1);
  std::vector<Target> t{{0, -1}, {0, -1}, {0, -1}};
  auto r = route_one_to_one(g, {1, 2, 3}, t, 1);
  REQUIRE(r);
  CHECK(r->walks.size() == 3);
  std::vector<Target> one{{0, 0}};
  CHECK(!route_one_to_one(g, {2, 3}, one, 3));  // fewer targets than sources
  std::vector<Target> same{{0, 0}, {0, 0}, {0, 0}};
  CHECK(!route_one_to_one(g, {1, 2, 3}, same, 2));
  auto m = route_one_to_one_min(g, {1, 2, 3}, same, 5);
  REQUIRE(m);
  CHECK(m->mult == 4);  // via reservations plus the walks from 2 and 3
  for (std::size_t i = 0; i < m->walks.size(); ++i) CHECK(walk_end(g, m->walks[i]) == 1);
}

TEST_CASE("witness text round trip") {
  Witness w = load_witness("witness_type1.witness");
  std::ostringstream out;
  write_witness(out, w);
  std::istringstream in(out.str());
  Witness v = read_witness(in);
  CHECK(v.kind == w.kind);
  CHECK(v.sets == w.sets);
  CHECK(v.groups == w.groups);
  REQUIRE(v.paths.size() == w.paths.size());
  for (std::size_t j = 0; j < v.paths.size(); ++j) {
    REQUIRE(v.paths[j].size() == w.paths[j].size());
    for (std::size_t i = 0; i < v.paths[j].size(); ++i) {
      CHECK(v.paths[j][i].start == w.paths[j][i].start);
      CHECK(v.paths[j][i].edges == w.paths[j][i].edges);
    }
  }
  std::istringstream bad("kind 3\n");
  CHECK_THROWS_AS(read_witness(bad), ParseError);
  std::istringstream bad2("set 0 1\n");
  CHECK_THROWS_AS(read_witness(bad2), ParseError);
  std::istringstream bad3("bogus\n");
  CHECK_THROWS_AS(read_witness(bad3), ParseError);
}

TEST_CASE("type-1 fixture verifies and routes within 10") {
  CapGraph g = read_graph_file(fixture("witness_type1.graph"));
  Witness w = load_witness("witness_type1.witness");
  CHECK(witness_r(w) == 3);
  CertReport rep = verify_witness(g, w);
  for (const auto& it : rep.items) CHECK_MESSAGE(it.ok, it.name << ": " << it.detail);
  WitnessFlow f = witness_to_flow(g, w);
  REQUIRE_MESSAGE(f.ok, f.why);
  CHECK(f.pair_amount == frac(1, 4));
  check_pair_exchange(g, f.flow, f.pair_amount);
  CHECK(congestion_scan(g, f.flow) == f.congestion);
  CHECK(f.congestion <= 10);
  CHECK(f.path_mult <= 3);
  CHECK(f.spread_mult <= 3);
}

TEST_CASE("type-2 fixture verifies and routes within 34") {
  CapGraph g = read_graph_file(fixture("witness_type2.graph"));
  Witness w = load_witness("witness_type2.witness");
  CHECK(witness_r(w) == 3);
  CertReport rep = verify_witness(g, w);
  for (const auto& it : rep.items) CHECK_MESSAGE(it.ok, it.name << ": " << it.detail);
  WitnessFlow f = witness_to_flow(g, w);
  REQUIRE_MESSAGE(f.ok, f.why);
  CHECK(f.pair_amount == frac(1, 8));
  check_pair_exchange(g, f.flow, f.pair_amount);
  CHECK(congestion_scan(g, f.flow) == f.congestion);
  CHECK(f.congestion <= 34);
}

TEST_CASE("verification rejects broken witnesses") {
  CapGraph g = read_graph_file(fixture("witness_type1.graph"));
  Witness w = load_witness("witness_type1.witness");
  SUBCASE("overlapping sets") {
    w.sets[1].push_back(w.sets[0][0]);
    std::sort(w.sets[1].begin(), w.sets[1].end());
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("a set holding a terminal") {
    w.sets[0].push_back(g.terminals()[3]);
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("too few paths") {
    w.paths[2].pop_back();
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("a walk that stops short of the set") {
    w.paths[0][0].edges.pop_back();
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("two paths from one terminal") {
    w.paths[1][1] = w.paths[1][0];
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("a smaller set that still holds the path ends") {
    w.sets[0] = {w.sets[0][0], w.sets[0][1]};
    CHECK(verify_witness(g, w).ok());
    w.sets[0] = {w.sets[0][0]};
    CHECK(!verify_witness(g, w).ok());  // the second group edge is now outside
  }
}

TEST_CASE("type-2 verification rejects broken witnesses") {
  CapGraph g = read_graph_file(fixture("witness_type2.graph"));
  Witness w = load_witness("witness_type2.witness");
  SUBCASE("group edge inside A") {
    w.groups[0][0] = 9;  // an edge of the K6
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("groups overlap") {
    w.groups[1] = w.groups[0];
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("T* of the wrong size") {
    w.tstar.pop_back();
    CHECK(!verify_witness(g, w).ok());
  }
  SUBCASE("A no longer touching its groups") {
    w.a = {8};
    CHECK(!verify_witness(g, w).ok());
  }
}

TEST_CASE("witness flows on generated layered instances") {
  // k terminals on a k-cycle of hubs, r blobs K_m; hub i joined to blob
  // vertex i mod m. Paths use the first ceil(k/2) terminals.
  for (int k : {2, 3, 4, 6}) {
    for (int r : {1, 2, 4}) {
      int m = 4;
      CapGraph g(k + r * m);
      for (int i = 0; i < k && k > 1; ++i)
        if (k > 2 || i == 0) g.add_edge(i, (i + 1) % k, 1);
      for (int j = 0; j < r; ++j)
        for (int a = 0; a < m; ++a)
          for (int b = a + 1; b < m; ++b) g.add_edge(k + j * m + a, k + j * m + b, 1);
      std::vector<std::vector<EdgeId>> hub_blob(r, std::vector<EdgeId>(k));
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < k; ++i) hub_blob[j][i] = g.add_edge(i, k + j * m + i % m, 1);
      std::vector<EdgeId> pend(k);
      for (int i = 0; i < k; ++i) {
        VertexId t = g.add_vertex();
        pend[i] = g.add_edge(t, i, 1);
        g.add_terminal(t);
      }
      Witness w;
      int h = (k + 1) / 2;
      for (int j = 0; j < r; ++j) {
        std::vector<VertexId> s;
        for (int a = 0; a < m; ++a) s.push_back(k + j * m + a);
        w.sets.push_back(s);
        std::vector<EdgeId> grp;
        std::vector<Walk> ws;
        for (int i = 0; i < h; ++i) {
          grp.push_back(hub_blob[j][i]);
          ws.push_back(Walk{g.terminals()[i], {pend[i], hub_blob[j][i]}});
        }
        w.groups.push_back(grp);
        w.paths.push_back(ws);
      }
      INFO("k=" << k << " r=" << r);
      CHECK(verify_witness(g, w).ok());
      WitnessFlow f = witness_to_flow(g, w);
      REQUIRE_MESSAGE(f.ok, f.why);
      check_pair_exchange(g, f.flow, frac(1, k));
      CHECK(f.congestion <= 10);
    }
  }
}
