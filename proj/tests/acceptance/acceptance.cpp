// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sabotage.hpp"
#include "vsparse/cut_sparsifier.hpp"
#include "vsparse/errors.hpp"
#include "vsparse/flow_sparsifier.hpp"
#include "vsparse/generators.hpp"
#include "vsparse/io.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/routing.hpp"
#include "vsparse/sparsest_cut.hpp"
#include "vsparse/verifier.hpp"
#include "vsparse/well_linked.hpp"
#include "vsparse/witness.hpp"

using namespace vsp;

namespace {

constexpr double kDelta = 1e-6;

// Collects failures with context; a criterion passes when none were noted.
struct Tally {
  long checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++failed;
  }
  long failed = 0;
  bool ok() const { return failed == 0; }
};

std::string first_failure(const CertReport& r) {
  for (const CheckItem& it : r.items)
    if (!it.ok) return it.name + (it.detail.empty() ? "" : " (" + it.detail + ")");
  return "";
}

CapGraph pendant_terminals(CapGraph g, const std::vector<VertexId>& at) {
  for (VertexId v : at) {
    VertexId t = g.add_vertex();
    g.add_edge(v, t, 1);
    g.add_terminal(t);
  }
  return g;
}

// 3-regular core with pendant paths hanging off it; the paths are the sets
// the contraction loop can remove.
CapGraph pockets(int core, int k, int n_pockets, int len, std::uint64_t seed) {
  CapGraph g = gen_regular(core, 3, k, seed);
  std::mt19937_64 rng(seed);
  for (int p = 0; p < n_pockets; ++p) {
    VertexId prev = static_cast<VertexId>(rng() % core);
    for (int i = 0; i < len; ++i) {
      VertexId v = g.add_vertex();
      g.add_edge(prev, v, 1);
      prev = v;
    }
  }
  return g;
}

Q net_in(const CapGraph& g, const Commodity& c, VertexId v) {
  Q s = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.u == ed.v) continue;
    if (ed.v == v) s += c.flow[e];
    if (ed.u == v) s -= c.flow[e];
  }
  return s;
}

std::string qs(const Q& q) { return to_string(q); }

// ---- shared instance families ----

struct CutRun {
  std::string name;
  CapGraph g;
  CutSparsifier s;
};

// Small dense blobs joined in a random tree by single edges, terminals
// scattered over the blobs: the blob tree cuts are sparse, so the strong
// decomposition has work to do.
CapGraph blob_chain(int blobs, int k, int max_deg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CapGraph g(0);
  std::vector<std::vector<VertexId>> members;
  for (int b = 0; b < blobs; ++b) {
    int size = 2 + static_cast<int>(rng() % 4);
    std::vector<VertexId> vs;
    for (int i = 0; i < size; ++i) vs.push_back(g.add_vertex());
    for (int i = 0; i + 1 < size; ++i) g.add_edge(vs[i], vs[i + 1], 1);
    for (int extra = 0; extra < size; ++extra) {
      VertexId a = vs[rng() % size], c = vs[rng() % size];
      if (a != c) g.add_edge(a, c, 1);
    }
    if (b > 0) {
      const auto& other = members[rng() % members.size()];
      g.add_edge(vs[0], other[rng() % other.size()], 1);
    }
    members.push_back(vs);
  }
  int n = g.num_vertices();
  for (int i = 0; i < k; ++i) {
    VertexId t = g.add_vertex();
    int deg = 1 + static_cast<int>(rng() % max_deg);
    for (int j = 0; j < deg; ++j) g.add_edge(t, static_cast<VertexId>(rng() % n), 1);
    g.add_terminal(t);
  }
  return g;
}

std::vector<CutRun>& unit_cut_runs() {
  static std::vector<CutRun> runs = [] {
    std::vector<CutRun> out;
    for (int i = 0; i < 200; ++i) {
      int k = 2 + i % 7;                  // 2..8
      int deg = 1 + (i / 7) % 3;          // terminal degree 1..3
      std::uint64_t seed = 1000 + i;
      CapGraph g(0);
      std::string family;
      switch (i % 4) {
        case 0: {
          int n = 6 + (i * 7) % 27;  // n + k <= 40
          g = gen_random_unit(n, n + 1 + (i % 3) * n / 3, k, deg, seed);
          family = "random";
          break;
        }
        case 1:
          g = blob_chain(3 + i % 4, k, deg, seed);  // at most 30 + k vertices
          family = "blobs";
          break;
        case 2: {
          int n = 8 + (i * 5) % 24;
          g = gen_random_unit(n, n, k, deg, seed);
          family = "near-tree";
          break;
        }
        default:
          g = gen_grid(3 + i % 3, 3 + (i / 4) % 4, k, seed);
          family = "grid";
          break;
      }
      std::string name = family + "#" + std::to_string(i) + " n=" + std::to_string(g.num_vertices()) +
                         " k=" + std::to_string(k);
      out.push_back({name, g, build_cut_sparsifier_unit(g)});
    }
    return out;
  }();
  return runs;
}

struct FlowRun {
  std::string name;
  CapGraph g;
  RouterSparsifier s;
};

std::vector<FlowRun>& flow_runs() {
  static std::vector<FlowRun> runs = [] {
    std::vector<FlowRun> out;
    auto add = [&](const std::string& name, CapGraph g) {
      auto s = build_flow_sparsifier_unit(g);
      out.push_back({name, std::move(g), std::move(s)});
    };
    for (std::uint64_t s = 1; s <= 6; ++s) {
      add("dumbbell#" + std::to_string(s), gen_dumbbell(4 + static_cast<int>(s % 5), 5 + static_cast<int>(s % 4), s));
      add("grid#" + std::to_string(s), gen_grid(4 + static_cast<int>(s % 3), 4 + static_cast<int>((s + 1) % 3),
                                                4 + static_cast<int>(s % 5), s));
      add("welllinked#" + std::to_string(s), gen_welllinked(4 + static_cast<int>(s % 3), 2 + static_cast<int>(s % 2), s));
      add("pockets#" + std::to_string(s), pockets(12 + 2 * static_cast<int>(s % 4), 6 + static_cast<int>(s % 3),
                                                  2 + static_cast<int>(s % 3), 5 + static_cast<int>(s % 4), s));
      add("random#" + std::to_string(s), gen_random_unit(10 + 2 * static_cast<int>(s), 22 + 3 * static_cast<int>(s),
                                                         4 + static_cast<int>(s % 5), 1 + static_cast<int>(s % 2), 40 + s));
      add("regular#" + std::to_string(s), gen_regular(12 + 2 * static_cast<int>(s % 3), 3, 5 + static_cast<int>(s % 3), 60 + s));
    }
    return out;
  }();
  return runs;
}

std::vector<VertexId> interior(const CapGraph& g) {
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!g.is_terminal(v)) inner.push_back(v);
  return inner;
}

// Inputs meeting the well-linked builder's precondition (degree-1 terminals,
// interior exactly 1/3-well-linked), k <= 8 and n <= 60.
std::vector<FlowRun>& well_linked_runs() {
  static std::vector<FlowRun> runs = [] {
    std::vector<FlowRun> out;
    for (std::uint64_t s = 1; out.size() < 24 && s < 400; ++s) {
      int k = 5 + static_cast<int>(s % 4);
      CapGraph g(0);
      std::string family;
      switch (s % 3) {
        case 0:
          g = pockets(12 + 2 * static_cast<int>(s % 10), k, 1 + static_cast<int>(s % 4), 4 + static_cast<int>(s % 7), 900 + s);
          family = "pockets";
          break;
        case 1:
          g = gen_regular(16 + 2 * static_cast<int>(s % 12), 3 + static_cast<int>(s % 2), k, 900 + s);
          family = "regular";
          break;
        default:
          g = gen_welllinked(k, 2 + static_cast<int>(s % 3), 900 + s);
          family = "layered";
          break;
      }
      if (g.num_vertices() > 60) continue;
      bool unit_pendants = true;
      for (VertexId t : g.terminals()) unit_pendants = unit_pendants && g.degree(t) == 1;
      if (!unit_pendants) continue;
      auto wl = is_well_linked(g, interior(g), frac(1, 3));
      if (!wl.certified || !wl.well_linked) continue;
      auto sp = build_flow_sparsifier_well_linked(g);
      out.push_back({family + "-wl#" + std::to_string(s), std::move(g), std::move(sp)});
    }
    return out;
  }();
  return runs;
}

std::vector<const FlowRun*> all_flow_runs() {
  std::vector<const FlowRun*> v;
  for (const FlowRun& r : flow_runs()) v.push_back(&r);
  for (const FlowRun& r : well_linked_runs()) v.push_back(&r);
  return v;
}

// ---- criteria ----

struct Result {
  bool pass;
  std::string detail;
};

Result finish(const Tally& t, const std::string& summary) {
  std::string d = summary + "; " + std::to_string(t.checks) + " checks";
  if (!t.ok()) {
    d += ", " + std::to_string(t.failed) + " failed: ";
    for (std::size_t i = 0; i < t.failures.size(); ++i) d += (i ? " | " : "") + t.failures[i];
  }
  return {t.ok(), d};
}

Result c1_unit_cut_quality() {
  Tally t;
  Q worst = 1;
  for (const CutRun& r : unit_cut_runs()) {
    auto st = check_restricted_structure(r.g, r.s.h, r.s.map.preimage, 0, true);
    t.expect(st.ok(), r.name + ": structure " + first_failure(st));
    auto q = verify_cut_quality(r.g, r.s.h, 3);
    t.expect(q.exhaustive, r.name + ": not exhaustive");
    t.expect(q.violations.empty(), r.name + ": lower side violated");
    t.expect(q.q_observed >= 1 && q.q_observed <= 3, r.name + ": q_observed " + qs(q.q_observed));
    worst = std::max(worst, q.q_observed);
  }
  return finish(t, std::to_string(unit_cut_runs().size()) + " instances, max q_observed " + qs(worst) + " <= 3");
}

Result c2_capacitated_cut_quality() {
  Tally t;
  const Q eps_list[] = {frac(3, 10), frac(3, 5), Q(1)};
  std::map<std::string, Q> worst;
  int count = 0;
  for (int i = 0; i < 54; ++i) {
    Q eps = eps_list[i % 3];
    int k = 2 + i % 5;
    int n = 6 + (i * 5) % 15;
    CapGraph g = gen_random_capacitated(n, n + 2 + i % 9, k, 1 + i % 2, 500 + i);
    auto s = build_cut_sparsifier(g, eps);
    std::string name = "cap#" + std::to_string(i) + " eps'=" + qs(eps);
    t.expect(s.claimed_q == 3 + eps, name + ": claimed " + qs(s.claimed_q));
    auto st = check_restricted_structure(g, s.h, s.map.preimage, s.eps_internal, true);
    t.expect(st.ok(), name + ": structure " + first_failure(st));
    auto q = verify_cut_quality(g, s.h, 3 + eps);
    t.expect(q.exhaustive && q.violations.empty(), name + ": lower side or budget");
    t.expect(q.q_observed <= 3 + eps, name + ": q_observed " + qs(q.q_observed));
    Q& w = worst[qs(eps)];
    w = std::max(w, q.q_observed);
    ++count;
  }
  std::string d = std::to_string(count) + " instances, max q_observed";
  for (const auto& [e, w] : worst) d += " eps'=" + e + ": " + qs(w);
  return finish(t, d);
}

Result c3_strong_decomposition() {
  Tally t;
  long runs = 0, clusters = 0;
  auto check = [&](const CapGraph& g, const Decomposition& d, const std::string& name) {
    if (d.z > 12) return;
    ++runs;
    clusters += static_cast<long>(d.clusters.size());
    CertReport rep = certify_decomposition(g, d);
    t.expect(rep.ok(), name + ": " + first_failure(rep));
    for (const CheckItem& it : rep.items)
      t.expect(it.detail.find("not rechecked") == std::string::npos, name + ": " + it.name + " skipped");
  };
  for (const CutRun& r : unit_cut_runs())
    for (const auto& d : r.s.decompositions) check(r.s.unit_graph, d, r.name);
  for (const FlowRun& r : flow_runs())
    for (const auto& d : r.s.decompositions) check(r.s.cert_graph, d, r.name);
  // standalone runs with heavier boundaries
  for (int i = 0; i < 40; ++i) {
    CapGraph g = gen_random_unit(8 + i % 10, 10 + i % 13, 3 + i % 5, 1 + i % 3, 3000 + i);
    std::vector<VertexId> inner;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!g.is_terminal(v)) inner.push_back(v);
    for (const auto& comp : induced_components(g, inner))
      check(g, strong_decompose(g, comp), "strong#" + std::to_string(i));
  }
  return finish(t, std::to_string(runs) + " decompositions with z <= 12, " + std::to_string(clusters) +
                       " clusters re-certified exactly");
}

// Blobs carrying heavy boundary weight joined by light edges: splits between
// blobs are far below the weak threshold.
CapGraph heavy_blobs(int blobs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CapGraph g(0);
  std::vector<std::vector<VertexId>> members;
  for (int b = 0; b < blobs; ++b) {
    int size = 1 + static_cast<int>(rng() % 3);
    std::vector<VertexId> vs;
    for (int i = 0; i < size; ++i) vs.push_back(g.add_vertex());
    for (int i = 0; i + 1 < size; ++i) g.add_edge(vs[i], vs[i + 1], 8);
    VertexId t = g.add_vertex();
    g.add_edge(vs[0], t, Q(1500 + static_cast<long>(rng() % 1500)));
    g.add_terminal(t);
    members.push_back(vs);
  }
  for (int b = 1; b < blobs; ++b) {
    int other = static_cast<int>(rng() % b);
    g.add_edge(members[b].back(), members[other][0], Q(1 + static_cast<long>(rng() % 2)));
  }
  return g;
}

Result c4_weak_decomposition() {
  Tally t;
  long runs = 0, splits = 0;
  auto check = [&](const CapGraph& g, const std::string& name) {
    std::vector<VertexId> inner;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!g.is_terminal(v)) inner.push_back(v);
    Decomposition d = weak_decompose(g, inner);
    ++runs;
    splits += static_cast<long>(d.splits.size());
    t.expect(d.boundary_tally * 5 <= d.z * 6, name + ": tally " + qs(d.boundary_tally) + " vs z " + qs(d.z));
    for (const SplitRecord& s : d.splits) {
      t.expect(below_weak_threshold(s.sparsity, d.z), name + ": split sparsity " + qs(s.sparsity));
      t.expect(s.smaller_boundary * 100 <= s.parent_boundary * 51,
               name + ": smaller side " + qs(s.smaller_boundary) + " of " + qs(s.parent_boundary));
    }
    CertReport rep = certify_decomposition(g, d);
    t.expect(rep.ok(), name + ": " + first_failure(rep));
  };
  for (int i = 0; i < 30; ++i) check(heavy_blobs(2 + i % 5, 7000 + i), "blobs#" + std::to_string(i));
  for (int i = 0; i < 30; ++i)
    check(gen_random_unit(8 + i % 12, 12 + i % 15, 3 + i % 6, 1 + i % 3, 7100 + i), "random#" + std::to_string(i));
  t.expect(splits > 0, "no split executed");
  return finish(t, std::to_string(runs) + " runs, " + std::to_string(splits) + " splits executed");
}

Result c5_router_constant() {
  Tally t;
  long certs = 0;
  Q worst = 0;
  for (const FlowRun* rp : all_flow_runs()) {
    const FlowRun& r = *rp;
    CertReport rep = recheck_router_certificates(r.s);
    t.expect(rep.ok(), r.name + ": " + first_failure(rep));
    for (const RouterCert& c : r.s.certs) {
      ++certs;
      t.expect(c.eta <= 34, r.name + ": eta " + qs(c.eta));
      worst = std::max(worst, c.eta);
    }
  }
  // single vertex with z pendant boundary edges, and the 2-path
  Q star_eta = 0;
  for (int z = 2; z <= 8; ++z) {
    CapGraph g(1);
    g = pendant_terminals(g, std::vector<VertexId>(z, 0));
    RouterCert c = certify_router(g, {0}, {});
    t.expect(c.eta < 2, "star z=" + std::to_string(z) + ": eta " + qs(c.eta));
    t.expect(c.eta == frac(2 * (z - 1), z), "star z=" + std::to_string(z) + ": eta " + qs(c.eta));
    star_eta = std::max(star_eta, c.eta);
  }
  CapGraph path(2);
  path.add_edge(0, 1, 1);
  path = pendant_terminals(path, {0, 1});
  RouterCert pc = certify_router(path, {0, 1}, {});
  t.expect(pc.eta == 1, "2-path: eta " + qs(pc.eta));
  return finish(t, std::to_string(certs) + " certificates over " + std::to_string(all_flow_runs().size()) +
                       " sparsifiers, max eta " + qs(worst) + " <= 34; star max " + qs(star_eta) +
                       " < 2; 2-path " + qs(pc.eta));
}

Result c6_flow_quality() {
  Tally t;
  long instances = 0, sets = 0;
  double worst_ratio = 0, worst_reroute = 0;
  RoutingOptions ro;
  ro.delta = kDelta;
  const double slack = 1 + 2 * kDelta;
  for (const FlowRun* rp : all_flow_runs()) {
    const FlowRun& r = *rp;
    ++instances;
    // (a) premises: every cluster a certified good router
    CertReport rep = recheck_router_certificates(r.s);
    t.expect(rep.ok(), r.name + ": " + first_failure(rep));
    for (const RouterCert& c : r.s.certs)
      t.expect(c.well_linked && c.wl_certified, r.name + ": cluster not certified 1/3-well-linked");
    // (b) and (c) over 100 demand sets
    int k = r.g.k();
    std::vector<DemandSet> family{uniform_demands(k), gravity_demands(r.g)};
    for (int i = 0; family.size() < 100; ++i)
      family.push_back(i % 3 == 0 ? matching_demands(k, 100 * instances + i) : random_demands(k, 100 * instances + i));
    for (std::size_t i = 0; i < family.size(); ++i) {
      const DemandSet& d = family[i];
      if (d.empty()) continue;
      ++sets;
      std::string name = r.name + " set " + std::to_string(i);
      FlowPair fp = evaluate_demands(r.g, r.s.h, d, ro);
      t.expect(fp.g.infinite == fp.h.infinite, name + ": infinite on one side only");
      if (fp.g.infinite) continue;
      double g_eta = to_double(fp.g.eta), h_eta = to_double(fp.h.eta);
      t.expect(h_eta <= g_eta * slack, name + ": eta_H " + qs(fp.h.eta) + " > eta_G " + qs(fp.g.eta));
      t.expect(g_eta <= 68 * h_eta * slack, name + ": eta_G " + qs(fp.g.eta) + " > 68 eta_H");
      worst_ratio = std::max(worst_ratio, g_eta / h_eta);
      Reroute rr = reroute_through_clusters(r.s, fp.h.flow);
      t.expect(to_double(rr.eta) <= 68 * h_eta * slack, name + ": reroute " + qs(rr.eta));
      t.expect(conserves(r.s.cert_graph, rr.flow), name + ": reroute does not conserve");
      bool balances = rr.flow.commodities.size() == fp.h.flow.commodities.size();
      for (std::size_t c = 0; balances && c < rr.flow.commodities.size(); ++c)
        for (VertexId tg : r.g.terminals())
          if (net_in(r.g, rr.flow.commodities[c], tg) != net_in(r.s.h, fp.h.flow.commodities[c], r.s.map.vertex_map[tg]))
            balances = false;
      t.expect(balances, name + ": reroute changes terminal balances");
      worst_reroute = std::max(worst_reroute, to_double(rr.eta) / h_eta);
    }
  }
  t.expect(instances >= 30, "fewer than 30 instances");
  std::ostringstream d;
  d << instances << " instances, " << sets << " demand sets; max eta_G/eta_H " << worst_ratio
    << " <= 68, max rerouted/eta_H " << worst_reroute << " <= 68, delta " << kDelta;
  return finish(t, d.str());
}

std::string fixture(const std::string& name) { return std::string(VSPARSE_FIXTURES_DIR) + "/" + name; }

Result c7_witness_flows() {
  Tally t;
  std::string d;
  for (int kind : {1, 2}) {
    std::string base = "witness_type" + std::to_string(kind);
    CapGraph g = read_graph_file(fixture(base + ".graph"));
    std::ifstream in(fixture(base + ".witness"));
    Witness w = read_witness(in);
    t.expect(w.kind == kind, base + ": kind");
    CertReport rep = verify_witness(g, w);
    t.expect(rep.ok(), base + ": " + first_failure(rep));
    WitnessFlow f = witness_to_flow(g, w);
    t.expect(f.ok, base + ": " + f.why);
    Q bound = kind == 1 ? 10 : 34;
    t.expect(f.congestion <= bound, base + ": congestion " + qs(f.congestion));
    t.expect(congestion(g, f.flow) == f.congestion, base + ": stored congestion differs");
    const auto& T = g.terminals();
    Q amount = frac(1, static_cast<long>(T.size()));
    t.expect(f.pair_amount == amount, base + ": pair amount " + qs(f.pair_amount));
    t.expect(f.flow.commodities.size() == T.size() - 1, base + ": commodity count");
    for (std::size_t a = 0; a < f.flow.commodities.size() && a + 1 < T.size(); ++a) {
      const Commodity& c = f.flow.commodities[a];
      t.expect(c.source == T[a], base + ": source");
      for (std::size_t b = 0; b < T.size(); ++b) {
        Q want = b == a ? -amount * static_cast<long>(T.size() - a - 1) : b > a ? amount : Q(0);
        t.expect(net_in(g, c, T[b]) == want, base + ": terminal pair " + std::to_string(a) + "," + std::to_string(b));
      }
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (!g.is_terminal(v)) t.expect(net_in(g, c, v) == 0, base + ": conservation");
    }
    d += (d.empty() ? "" : "; ") + std::string("type ") + std::to_string(kind) + " k=" + std::to_string(T.size()) +
         " congestion " + qs(f.congestion) + " <= " + qs(bound) + ", pairs exchange " + qs(amount);
  }
  return finish(t, d);
}

Result c8_progress_and_ledgers() {
  Tally t;
  long contractions = 0, refinements = 0, partitions = 0;
  mpz_class worst_num = 0, worst_den = 1;
  for (const FlowRun* rp : all_flow_runs()) {
    const FlowRun& r = *rp;
    for (const ContractEvent& e : r.s.log.contractions) {
      ++contractions;
      t.expect(e.n_after < e.n_before, r.name + ": contraction did not shrink G'");
      t.expect(e.ledger_ok(), r.name + ": ledger " + e.ledger_lhs.get_str() + " > " + e.ledger_rhs.get_str());
      if (e.ledger_lhs * worst_den > worst_num * e.ledger_rhs) {
        worst_num = e.ledger_lhs;
        worst_den = e.ledger_rhs;
      }
    }
    for (const RefineEvent& e : r.s.log.refinements) {
      ++refinements;
      t.expect(e.decreasing_ok && e.balanced_ok, r.name + ": refinement not monotone or unbalanced");
    }
  }
  // direct refinement runs
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    CapGraph g = gen_random_unit(24 + 2 * static_cast<int>(seed % 4), 50 + static_cast<int>(seed % 7), 8, 1, 8000 + seed);
    FlowBuildLog log;
    FlowParams p = make_flow_params(8);
    std::vector<VertexId> s;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!g.is_terminal(v)) s.push_back(v);
    RefineOutcome out = balanced_cut_refine(g, s, p, {}, log);
    std::string name = "refine#" + std::to_string(seed);
    for (const RefineEvent& e : log.refinements) {
      ++refinements;
      t.expect(e.decreasing_ok && e.balanced_ok, name + ": not monotone or unbalanced");
      for (std::size_t i = 1; i < e.cut_history.size(); ++i)
        t.expect(e.cut_history[i] < e.cut_history[i - 1], name + ": cut history");
    }
    if (out.kind == RefineOutcome::Kind::Partition) {
      ++partitions;
      std::vector<char> in_x(g.num_vertices(), 0), in_y(g.num_vertices(), 0);
      for (VertexId v : out.x) in_x[v] = 1;
      for (VertexId v : out.y) in_y[v] = 1;
      long cut = 0;
      for (const Edge& e : g.edges())
        if ((in_x[e.u] && in_y[e.v]) || (in_x[e.v] && in_y[e.u])) ++cut;
      t.expect(cut <= p.r * g.k(), name + ": |E(X,Y)| " + std::to_string(cut));
      t.expect(4 * out.x.size() >= s.size() && 4 * out.y.size() >= s.size(), name + ": unbalanced");
      t.expect(out.x.size() + out.y.size() == s.size(), name + ": X, Y do not partition S");
    }
  }
  // the theoretical profile end to end: its F exceeds every instance here
  long theo_contractions = 0;
  for (std::size_t i = 0; i < flow_runs().size(); i += 6) {
    FlowBuildOptions o;
    o.params.profile = Profile::Theoretical;
    auto s = build_flow_sparsifier_unit(flow_runs()[i].g, o);
    for (const ContractEvent& e : s.log.contractions) {
      ++theo_contractions;
      t.expect(e.n_after < e.n_before && e.active_lhs <= e.active_rhs, flow_runs()[i].name + ": theoretical contraction");
    }
  }
  t.expect(contractions > 0, "no contraction fired");
  t.expect(partitions > 0, "no balanced partition produced");
  std::ostringstream d;
  d << contractions << " contractions fired (aggressive), ledger on the theoretical F table held on all, worst "
    << worst_num.get_str() << "/" << worst_den.get_str() << "; " << theo_contractions
    << " fired under the theoretical profile; " << refinements << " refinements strictly decreasing, "
    << partitions << " balanced partitions";
  return finish(t, d.str());
}

std::string last_note(const RouterSparsifier& s) {
  std::string all;
  for (const std::string& n : s.log.notes) all += (all.empty() ? "" : " / ") + n;
  return all.empty() ? "no stop note" : all;
}

Result c9_size_bounds() {
  Tally t;
  long worst_cut = 0, worst_cut_k = 0, multi = 0, cut_max = 0;
  for (const CutRun& r : unit_cut_runs()) {
    long steiner = r.s.h.num_vertices() - r.s.h.k();
    long k = r.g.k();
    multi += steiner >= 2;
    cut_max = std::max(cut_max, steiner);
    t.expect(steiner <= 3 * k * k * k, r.name + ": " + std::to_string(steiner) + " Steiner vertices");
    if (worst_cut_k == 0 || steiner * worst_cut_k * worst_cut_k * worst_cut_k > worst_cut * k * k * k) {
      worst_cut = steiner;
      worst_cut_k = k;
    }
  }
  // flat F_aggressive(k) on every aggressive flow output, both builders
  long flow_max = 0, merged = 0;
  for (const FlowRun* r : all_flow_runs()) {
    long steiner = r->s.h.num_vertices() - r->s.h.k();
    mpz_class bound = r->s.params.F(r->s.params.k);
    t.expect(mpz_class(steiner) <= bound, r->name + ": " + std::to_string(steiner) + " Steiner vertices > F(" +
                                              std::to_string(r->s.params.k) + ") = " + bound.get_str() + "; " +
                                              last_note(r->s));
    flow_max = std::max(flow_max, steiner);
    merged += r->s.log.router_merges > 0;
  }
  t.expect(well_linked_runs().size() >= 20, "fewer than 20 well-linked inputs");
  std::ostringstream d;
  d << "cut: " << unit_cut_runs().size() << " runs (" << multi << " with >= 2 clusters, up to " << cut_max
    << " Steiner), worst ratio " << worst_cut << " Steiner at k=" << worst_cut_k << " (3k^3 = "
    << 3 * worst_cut_k * worst_cut_k * worst_cut_k << "); flow: " << all_flow_runs().size()
    << " aggressive runs within F(k), up to " << flow_max << " Steiner, " << merged
    << " needed adjacent-router merges";
  return finish(t, d.str());
}

Result c10_sabotage() {
  Tally t;
  std::vector<sabotage::Outcome> all;
  auto append = [&](std::vector<sabotage::Outcome> v) { all.insert(all.end(), v.begin(), v.end()); };
  for (std::size_t i : {5, 40, 77}) {
    const CutRun& r = unit_cut_runs()[i];
    t.expect(sabotage::cut_suite_ok(r.g, r.s.h, r.s.map.preimage, 0, 3), r.name + ": clean copy rejected");
    append(sabotage::corrupt_cut(r.g, r.s));
  }
  for (std::uint64_t seed : {5, 6}) {
    CapGraph g = gen_random_capacitated(12, 24, 4, 1, seed);
    auto s = build_cut_sparsifier(g, frac(1, 2));
    t.expect(sabotage::cut_suite_ok(g, s.h, s.map.preimage, s.eps_internal, s.claimed_q), "capacitated clean copy rejected");
    append(sabotage::corrupt_cut(g, s));
  }
  for (std::size_t i : {0, 1, 3}) {
    const FlowRun& r = flow_runs()[i];
    t.expect(recheck_router_certificates(r.s).ok(), r.name + ": clean copy rejected");
    append(sabotage::corrupt_flow(r.s));
  }
  long flagged = 0;
  for (const auto& o : all) {
    t.expect(o.flagged, "not flagged: " + o.name);
    flagged += o.flagged;
  }
  t.expect(all.size() >= 30, "corpus smaller than 30");
  return finish(t, std::to_string(flagged) + "/" + std::to_string(all.size()) + " corruptions flagged");
}

Result c11_oracles() {
  Tally t;
  std::mt19937_64 rng(11);
  long mf = 0, sc = 0, lp = 0;
  for (int it = 0; it < 80; ++it) {
    int n = 4 + it % 7;  // interior; n + k <= 12
    int k = 2 + it % 3;
    CapGraph g = it % 2 ? gen_random_capacitated(n, n + 3 + it % 6, k, 1 + it % 2, 11000 + it)
                        : gen_random_unit(n, n + 3 + it % 6, k, 1 + it % 2, 11000 + it);
    std::vector<VertexId> a{g.terminals()[0]}, b{g.terminals()[1]};
    if (it % 3 == 0) a.push_back(static_cast<VertexId>(rng() % n));
    if (std::find(b.begin(), b.end(), a.back()) != b.end()) a.pop_back();
    auto r = max_flow(g, a, b);
    t.expect(r.value == oracle::min_cut_enum(g, a, b), "max_flow #" + std::to_string(it));
    t.expect(r.cut.value == r.value, "max_flow cut #" + std::to_string(it));
    ++mf;
  }
  for (int it = 0; it < 80; ++it) {
    int n = 2 + it % 11;  // |S| <= 12
    CapGraph inner = gen_random_unit(n, n + static_cast<int>(rng() % 8), 0, 1, 12000 + it);
    if (it % 3 == 0)
      for (EdgeId e = 0; e < inner.num_edges(); ++e) inner.set_capacity(e, Q(1 + static_cast<long>(rng() % 3)));
    int z = 2 + static_cast<int>(rng() % 5);
    CapGraph g = inner;
    for (int i = 0; i < z; ++i) g.add_edge(static_cast<VertexId>(rng() % n), g.add_vertex(), 1);
    std::vector<VertexId> s;
    for (int i = 0; i < n; ++i) s.push_back(i);
    auto inst = subdivide_boundary(g, s);
    auto c = sparsest_cut_exact(inst);
    auto o = oracle::sparsest_enum(inst.g);
    t.expect(o.defined && c.sparsity == o.sparsity, "sparsest cut #" + std::to_string(it) + ": " + qs(c.sparsity) +
                                                         " vs " + qs(o.sparsity));
    ++sc;
  }
  for (int it = 0; it < 40; ++it) {
    int k = 3 + it % 2;
    CapGraph g = it % 2 ? gen_random_capacitated(4, 6, k, 1, 13000 + it) : gen_random_unit(4, 6, k, 1, 13000 + it);
    DemandSet d(k);
    d.set(0, 1, Q(1 + it % 3));
    d.set(1, 2, frac(1, 2));
    if (k > 3) d.set(0, 3, frac(3, 4));
    Q want = oracle::congestion_path_lp(g, d);
    RoutingOptions ex;
    ex.method = RoutingOptions::Method::Exact;
    auto r = min_congestion_routing(g, d, ex);
    t.expect(r.eta == want, "exact routing #" + std::to_string(it) + ": " + qs(r.eta) + " vs " + qs(want));
    RoutingOptions fl;
    fl.method = RoutingOptions::Method::Float;
    fl.delta = kDelta;
    auto rf = min_congestion_routing(g, d, fl);
    t.expect(rf.lower <= want && want <= rf.eta && to_double(rf.eta) <= to_double(want) * (1 + 2 * kDelta),
             "float routing #" + std::to_string(it));
    ++lp;
  }
  return finish(t, std::to_string(mf) + " max-flow, " + std::to_string(sc) + " sparsest-cut, " + std::to_string(lp) +
                       " routing comparisons against brute force");
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Result()> run;
  };
  std::vector<Criterion> all{
      {1, "cut quality, unit capacities", c1_unit_cut_quality},
      {2, "cut quality, capacitated", c2_capacitated_cut_quality},
      {3, "strong decomposition", c3_strong_decomposition},
      {4, "weak decomposition", c4_weak_decomposition},
      {5, "good-router constant 34", c5_router_constant},
      {6, "flow quality (premises, sampled demands, reroute)", c6_flow_quality},
      {7, "witness flows", c7_witness_flows},
      {8, "progress and ledgers", c8_progress_and_ledgers},
      {9, "size bounds", c9_size_bounds},
      {10, "sabotage corpus", c10_sabotage},
      {11, "oracle cross-checks", c11_oracles},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int passed = 0, ran = 0;
  for (const Criterion& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    ++ran;
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed += r.pass;
    std::printf("%s %2d %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", passed, ran);
  return passed == ran ? 0 : 1;
}
