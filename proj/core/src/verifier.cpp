#include "vsparse/verifier.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vsparse/errors.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/router.hpp"

namespace vsp {

namespace {

using Rng = std::mt19937_64;

// Runs job(i) for i in [0, n) over `workers` threads; rethrows the first error.
template <class Job>
void fan_out(std::size_t n, int workers, Job job) {
  const std::size_t w = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(n, 1));
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < w; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += w) job(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string describe_demands(const DemandSet& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, b, v] : d.pairs()) {
    os << (first ? "" : " ") << a + 1 << "-" << b + 1 << ":" << to_string(v);
    first = false;
  }
  return os.str();
}

void finish(QualityReport& r) {
  std::sort(r.tests.begin(), r.tests.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  r.q_observed = 1;
  for (const QualityRecord& t : r.tests) {
    if (!t.lower_ok) r.violations.push_back(t.id + ": lower side fails (" + to_string(t.h_value) + " vs " + to_string(t.g_value) + ")");
    if (t.infinite) {
      r.violations.push_back(t.id + ": unbounded ratio");
      continue;
    }
    if (t.ratio > r.q_observed) r.q_observed = t.ratio;
  }
}

}  // namespace

bool QualityReport::ok() const {
  if (!violations.empty()) return false;
  return to_double(q_observed) <= to_double(claimed) * (1 + 2 * delta) || q_observed <= claimed;
}

// ---- cuts ----

QualityReport verify_cut_quality(const CapGraph& g, const CapGraph& h, const Q& claimed, const CutVerifyOptions& opt) {
  if (g.k() != h.k()) throw InputError("G and H have different terminal counts");
  const int k = g.k();
  QualityReport r;
  r.mode = "cut";
  r.claimed = claimed;
  if (k < 2) return r;
  // terminal k-1 stays on the B side; samples are drawn up front so the
  // workers see a fixed list
  std::vector<std::vector<char>> sides;
  if (k <= opt.enum_budget) {
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << (k - 1)); ++m) {
      std::vector<char> s(k, 0);
      for (int t = 0; t + 1 < k; ++t) s[t] = static_cast<char>((m >> t) & 1);
      sides.push_back(std::move(s));
    }
  } else {
    r.exhaustive = false;
    r.budget_flags.push_back("non-exhaustive: k=" + std::to_string(k) + " above enumeration budget " +
                             std::to_string(opt.enum_budget) + ", " + std::to_string(opt.samples) +
                             " sampled bipartitions");
    Rng rng(opt.seed);
    std::set<std::vector<char>> seen;
    for (int i = 0; i < opt.samples; ++i) {
      std::vector<char> s(k, 0);
      do {
        for (int t = 0; t + 1 < k; ++t) s[t] = static_cast<char>(rng() & 1);
      } while (std::count(s.begin(), s.end(), 1) == 0);
      if (seen.insert(s).second) sides.push_back(std::move(s));
    }
  }
  r.tests.resize(sides.size());
  fan_out(sides.size(), opt.workers, [&](std::size_t i) {
    std::vector<int> ta, tb;
    std::string in(k, '0');
    for (int t = 0; t < k; ++t) {
      (sides[i][t] ? ta : tb).push_back(t);
      if (sides[i][t]) in[t] = '1';
    }
    QualityRecord& rec = r.tests[i];
    // ids sort in enumeration order
    std::string num = std::to_string(i);
    rec.id = "cut-" + std::string(8 - std::min<std::size_t>(8, num.size()), '0') + num;
    rec.input = in;
    rec.g_value = min_cut_between(g, ta, tb).value;
    rec.h_value = min_cut_between(h, ta, tb).value;
    rec.lower_ok = rec.h_value >= rec.g_value;
    if (rec.g_value == 0) {
      rec.infinite = rec.h_value > 0;
      rec.ratio = 1;
    } else {
      rec.ratio = rec.h_value / rec.g_value;
    }
  });
  finish(r);
  return r;
}

// ---- flows ----

const char* strategy_name(DemandStrategy s) {
  switch (s) {
    case DemandStrategy::Uniform: return "uniform";
    case DemandStrategy::Matching: return "matching";
    case DemandStrategy::Gravity: return "gravity";
    case DemandStrategy::Adversarial: return "adversarial";
  }
  return "?";
}

DemandStrategy parse_strategy(const std::string& name) {
  for (auto s : {DemandStrategy::Uniform, DemandStrategy::Matching, DemandStrategy::Gravity, DemandStrategy::Adversarial})
    if (name == strategy_name(s)) return s;
  throw ParamError("unknown demand strategy '" + name + "'");
}

DemandSet uniform_demands(int k) {
  DemandSet d(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) d.set(a, b, frac(1, k));
  return d;
}

DemandSet matching_demands(int k, std::uint64_t seed) {
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  Rng rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  DemandSet d(k);
  for (int i = 0; i + 1 < k; i += 2) d.set(perm[i], perm[i + 1], 1);
  return d;
}

DemandSet gravity_demands(const CapGraph& g) {
  const int k = g.k();
  Q total = 0;
  for (VertexId t : g.terminals()) total += g.degree(t);
  DemandSet d(k);
  if (total == 0) return d;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      d.set(a, b, g.degree(g.terminals()[a]) * g.degree(g.terminals()[b]) / total);
  return d;
}

DemandSet random_demands(int k, std::uint64_t seed) {
  Rng rng(seed);
  DemandSet d(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) d.set(a, b, frac(static_cast<long>(rng() % 5), 1));
  if (d.empty() && k >= 2) d.set(0, 1, 1);
  return d;
}

FlowPair evaluate_demands(const CapGraph& g, const CapGraph& h, const DemandSet& d, const RoutingOptions& opt) {
  return {min_congestion_routing(g, d, opt), min_congestion_routing(h, d, opt)};
}

namespace {

QualityRecord flow_record(const std::string& id, const DemandSet& d, const FlowPair& fp, double delta) {
  QualityRecord rec;
  rec.id = id;
  rec.input = describe_demands(d);
  rec.g_value = fp.g.eta;
  rec.h_value = fp.h.eta;
  if (fp.g.infinite || fp.h.infinite) {
    rec.lower_ok = fp.g.infinite || !fp.h.infinite;
    rec.infinite = fp.g.infinite && !fp.h.infinite;
    rec.ratio = 1;
    return rec;
  }
  rec.lower_ok = to_double(fp.h.eta) <= to_double(fp.g.eta) * (1 + 2 * delta) || fp.h.eta <= fp.g.eta;
  if (fp.h.eta == 0) {
    rec.infinite = fp.g.eta > 0;
    rec.ratio = 1;
  } else {
    rec.ratio = fp.g.eta / fp.h.eta;
  }
  return rec;
}

}  // namespace

QualityReport verify_flow_quality(const CapGraph& g, const CapGraph& h, const Q& claimed, const FlowVerifyOptions& opt) {
  if (g.k() != h.k()) throw InputError("G and H have different terminal counts");
  const int k = g.k();
  QualityReport r;
  r.mode = "flow";
  r.claimed = claimed;
  r.delta = opt.routing.delta;
  r.exhaustive = false;
  r.budget_flags.push_back("sampled: q_observed is a lower bound on the flow quality");
  if (k < 2) return r;

  struct Job {
    std::string id;
    DemandSet d;
  };
  std::vector<Job> jobs;
  bool adversarial = false;
  for (DemandStrategy s : opt.strategies) {
    switch (s) {
      case DemandStrategy::Uniform:
        jobs.push_back({"uniform", uniform_demands(k)});
        break;
      case DemandStrategy::Gravity:
        jobs.push_back({"gravity", gravity_demands(g)});
        break;
      case DemandStrategy::Matching:
        for (int i = 0; i < opt.samples; ++i)
          jobs.push_back({"matching-" + std::to_string(100 + i).substr(1), matching_demands(k, opt.seed * 1000 + i)});
        break;
      case DemandStrategy::Adversarial:
        adversarial = true;
        break;
    }
  }
  std::vector<QualityRecord> recs(jobs.size());
  fan_out(jobs.size(), opt.workers, [&](std::size_t i) {
    recs[i] = flow_record(jobs[i].id, jobs[i].d, evaluate_demands(g, h, jobs[i].d, opt.routing), r.delta);
  });
  r.tests = std::move(recs);

  if (adversarial) {
    // hill climbing on the ratio, one restart per sample, restarts in parallel
    std::vector<std::vector<QualityRecord>> per(opt.samples);
    fan_out(per.size(), opt.workers, [&](std::size_t i) {
      Rng rng(opt.seed * 7919 + i);
      DemandSet cur = random_demands(k, opt.seed * 104729 + i);
      auto tag = [&](int step) {
        return "adversarial-" + std::to_string(100 + i).substr(1) + "-" + std::to_string(100 + step).substr(1);
      };
      QualityRecord best = flow_record(tag(0), cur, evaluate_demands(g, h, cur, opt.routing), r.delta);
      per[i].push_back(best);
      for (int step = 1; step <= opt.adversarial_steps; ++step) {
        DemandSet next = cur;
        int a = static_cast<int>(rng() % k), b = static_cast<int>(rng() % (k - 1));
        if (b >= a) ++b;
        Q old = next.get(a, b);
        switch (rng() % 3) {
          case 0: next.set(a, b, old == 0 ? Q(1) : Q(old * 2)); break;
          case 1: next.set(a, b, old / 2); break;
          default: next.set(a, b, 0); break;
        }
        if (next.empty()) continue;
        QualityRecord rec = flow_record(tag(step), next, evaluate_demands(g, h, next, opt.routing), r.delta);
        per[i].push_back(rec);
        if (!rec.infinite && rec.ratio > best.ratio) {
          best = rec;
          cur = next;
        }
      }
    });
    for (auto& v : per) r.tests.insert(r.tests.end(), v.begin(), v.end());
  }
  finish(r);
  return r;
}

// ---- structure ----

CertReport check_restricted_structure(const CapGraph& g, const CapGraph& h,
                                      const std::vector<std::vector<VertexId>>& preimage, const Q& unit_eps,
                                      bool require_connected) {
  CertReport rep;
  const int n = g.num_vertices();
  if (static_cast<int>(preimage.size()) != h.num_vertices()) {
    rep.add("map covers H", false, std::to_string(preimage.size()) + " map lines for " +
                                       std::to_string(h.num_vertices()) + " H vertices");
    return rep;
  }
  std::vector<VertexId> image(n, -1);
  bool partition = true;
  std::string why;
  for (VertexId x = 0; x < h.num_vertices(); ++x) {
    if (preimage[x].empty()) {
      partition = false;
      why = "H vertex " + std::to_string(x + 1) + " has an empty preimage";
    }
    for (VertexId v : preimage[x]) {
      if (v < 0 || v >= n || image[v] != -1) {
        partition = false;
        why = "G vertex " + std::to_string(v + 1) + " mapped twice or out of range";
        continue;
      }
      image[v] = x;
    }
  }
  for (VertexId v = 0; v < n && partition; ++v)
    if (image[v] < 0) {
      partition = false;
      why = "G vertex " + std::to_string(v + 1) + " unmapped";
    }
  rep.add("map partitions V(G)", partition, why);
  if (!partition) return rep;

  bool terms = g.k() == h.k();
  why.clear();
  for (int i = 0; terms && i < g.k(); ++i) {
    VertexId th = h.terminals()[i];
    if (preimage[th] != std::vector<VertexId>{g.terminals()[i]}) {
      terms = false;
      why = "terminal " + std::to_string(i + 1) + " is not kept as itself";
    }
  }
  rep.add("terminals kept one to one", terms, why);

  bool steiner = true, conn = true;
  why.clear();
  std::string cwhy;
  std::vector<char> mark(n, 0);
  for (VertexId x = 0; x < h.num_vertices(); ++x) {
    if (h.is_terminal(x)) continue;
    for (VertexId v : preimage[x])
      if (g.is_terminal(v)) {
        steiner = false;
        why = "supernode " + std::to_string(x + 1) + " contains terminal " + std::to_string(v + 1);
      }
    if (!require_connected || preimage[x].size() < 2) continue;
    for (VertexId v : preimage[x]) mark[v] = 1;
    std::vector<char> seen(n, 0);
    std::deque<VertexId> q{preimage[x][0]};
    seen[preimage[x][0]] = 1;
    std::size_t cnt = 0;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      ++cnt;
      for (EdgeId e : g.incident(v)) {
        VertexId w = g.other(e, v);
        if (mark[w] && !seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
      }
    }
    for (VertexId v : preimage[x]) mark[v] = 0;
    if (cnt != preimage[x].size()) {
      conn = false;
      cwhy = "supernode " + std::to_string(x + 1) + " is disconnected in G";
    }
  }
  rep.add("supernodes are terminal-free", steiner, why);
  if (require_connected) rep.add("supernodes are connected", conn, cwhy);

  // capacity between every pair of H vertices
  Q limit = g.terminal_capacity();
  std::map<std::pair<VertexId, VertexId>, Q> want, have;
  for (const Edge& e : g.edges()) {
    VertexId a = image[e.u], b = image[e.v];
    if (a == b) continue;
    Q c = e.cap;
    if (unit_eps > 0) {
      if (limit > 0 && c > limit) c = limit;
      c = Q(ceil_div(c / unit_eps)) * unit_eps;
    }
    want[{std::min(a, b), std::max(a, b)}] += c;
  }
  for (const Edge& e : h.edges()) {
    if (e.u == e.v) continue;
    have[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.cap;
  }
  bool caps = want == have;
  why.clear();
  if (!caps) {
    for (const auto& [key, c] : want) {
      auto it = have.find(key);
      if (it == have.end() || it->second != c) {
        why = "H vertices " + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) + ": expected " +
              to_string(c) + ", found " + (it == have.end() ? std::string("none") : to_string(it->second));
        break;
      }
    }
    if (why.empty())
      for (const auto& [key, c] : have)
        if (!want.count(key)) {
          why = "H vertices " + std::to_string(key.first + 1) + "," + std::to_string(key.second + 1) +
                ": extra capacity " + to_string(c);
          break;
        }
  }
  rep.add("H is the contraction of G", caps, why);
  bool loops = true;
  for (const Edge& e : h.edges())
    if (e.u == e.v) loops = false;
  rep.add("H has no self-loops", loops);
  return rep;
}

// ---- router certificates ----

CertReport recheck_router_certificates(const RouterSparsifier& s, const RecheckOptions& opt) {
  CertReport rep;
  const CapGraph& g = s.cert_graph;
  if (s.certs.size() != s.map.clusters.size()) {
    rep.add("one certificate per cluster", false,
            std::to_string(s.certs.size()) + " certificates, " + std::to_string(s.map.clusters.size()) + " clusters");
    return rep;
  }
  Q scale = s.eps > 0 ? s.eps / (2 * opt.eta_star) : Q(1);
  {
    std::vector<std::vector<VertexId>> pre = s.map.preimage;
    // H capacities were scaled after the contraction
    CapGraph unscaled = s.h;
    for (EdgeId e = 0; e < unscaled.num_edges(); ++e) unscaled.set_capacity(e, s.h.edge(e).cap / scale);
    for (const CheckItem& it : check_restricted_structure(g, unscaled, pre, 0, true).items)
      rep.add("structure: " + it.name, it.ok, it.detail);
  }
  for (std::size_t c = 0; c < s.certs.size(); ++c) {
    const RouterCert& rc = s.certs[c];
    const std::string tag = "cluster " + std::to_string(c + 1) + ": ";
    if (rc.vertices != s.map.clusters[c]) {
      rep.add(tag + "certificate names the cluster", false);
      continue;
    }
    bool free = true;
    for (VertexId v : rc.vertices)
      if (v < 0 || v >= g.num_vertices() || g.is_terminal(v)) free = false;
    rep.add(tag + "terminal-free", free);
    if (!free) continue;
    auto inst = subdivide_boundary(g, rc.vertices);
    const auto& T = inst.g.terminals();
    Q z = 0;
    for (int i = 0; i < inst.g.k(); ++i) z += g.edge(inst.terminal_edge[i]).cap;
    rep.add(tag + "boundary size", z == rc.z, "stored " + to_string(rc.z) + ", recomputed " + to_string(z));
    if (z == 0) continue;

    bool shape = true;
    for (const Commodity& cm : rc.flow.commodities)
      if (static_cast<int>(cm.flow.size()) != inst.g.num_edges() || !inst.g.valid_vertex(cm.source)) shape = false;
    rep.add(tag + "flow matches the cluster graph", shape);
    if (!shape) continue;
    std::string why;
    rep.add(tag + "conservation", conserves(inst.g, rc.flow, &why), why);

    // net delivery per terminal, pair totals
    std::map<std::pair<VertexId, VertexId>, Q> sent;
    bool delivered = true;
    std::string dwhy;
    for (const Commodity& cm : rc.flow.commodities) {
      for (const auto& [t, amt] : cm.sinks) {
        Q in = 0;
        for (EdgeId e : inst.g.incident(t)) {
          const Edge& ed = inst.g.edge(e);
          if (ed.u == ed.v) continue;
          in += ed.v == t ? cm.flow[e] : Q(-cm.flow[e]);
        }
        if (in != amt) {
          delivered = false;
          dwhy = "sink receives " + to_string(in) + " of " + to_string(amt);
        }
        sent[{std::min(cm.source, t), std::max(cm.source, t)}] += amt;
      }
    }
    for (std::size_t a = 0; a < T.size(); ++a)
      for (std::size_t b = a + 1; b < T.size(); ++b) {
        Q want = 2 * g.edge(inst.terminal_edge[a]).cap * g.edge(inst.terminal_edge[b]).cap / z;
        Q got = sent[{std::min(T[a], T[b]), std::max(T[a], T[b])}];
        if (got != want) {
          delivered = false;
          dwhy = "buckets " + std::to_string(a + 1) + "," + std::to_string(b + 1) + " exchange " + to_string(got) +
                 " instead of " + to_string(want);
        }
      }
    rep.add(tag + "pair demands 2cc'/z", delivered, dwhy);

    Q worst = 0;
    for (EdgeId e = 0; e < inst.g.num_edges(); ++e) {
      Q load = 0;
      for (const Commodity& cm : rc.flow.commodities) load += abs(cm.flow[e]);
      const Edge& ed = inst.g.edge(e);
      if (inst.g.is_terminal(ed.u) || inst.g.is_terminal(ed.v)) load += 2 * ed.cap * (ed.cap - 1) / z;
      if (load / ed.cap > worst) worst = load / ed.cap;
    }
    rep.add(tag + "stored congestion", worst == rc.eta, "stored " + to_string(rc.eta) + ", recomputed " + to_string(worst));
    rep.add(tag + "congestion <= " + to_string(opt.eta_star), worst <= opt.eta_star, to_string(worst));

    if (attachment_count(inst) <= opt.cut.budget) {
      auto wl = is_well_linked(inst, frac(1, 3), opt.cut);
      rep.add(tag + "1/3-well-linked (exact)", wl.well_linked && wl.certified,
              wl.cut.infinite ? "" : "sparsest " + to_string(wl.cut.sparsity));
    } else {
      rep.add(tag + "1/3-well-linked (stored, past budget)", rc.well_linked && rc.wl_certified && rc.wl_sparsity * 3 >= 1,
              "attachment count " + std::to_string(attachment_count(inst)));
    }
  }
  return rep;
}

// ---- JSON ----

namespace {

nlohmann::ordered_json rational_json(const Q& q) { return {{"exact", to_string(q)}, {"value", to_double(q)}}; }

}  // namespace

std::string report_json(const QualityReport& r, int indent) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["q_observed"] = rational_json(r.q_observed);
  j["claimed"] = rational_json(r.claimed);
  j["delta"] = r.delta;
  j["exhaustive"] = r.exhaustive;
  j["ok"] = r.ok();
  j["tests"] = nlohmann::ordered_json::array();
  for (const QualityRecord& t : r.tests)
    j["tests"].push_back({{"id", t.id},
                          {"input", t.input},
                          {"g", to_string(t.g_value)},
                          {"h", to_string(t.h_value)},
                          {"ratio", t.infinite ? std::string("inf") : to_string(t.ratio)},
                          {"lower_ok", t.lower_ok}});
  j["violations"] = r.violations;
  j["budget_flags"] = r.budget_flags;
  return j.dump(indent);
}

std::string cert_report_json(const CertReport& r, int indent) {
  nlohmann::ordered_json j;
  j["ok"] = r.ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckItem& it : r.items) j["checks"].push_back({{"name", it.name}, {"ok", it.ok}, {"detail", it.detail}});
  return j.dump(indent);
}

}  // namespace vsp
