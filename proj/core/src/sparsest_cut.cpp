#include "vsparse/sparsest_cut.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>

#include "vsparse/errors.hpp"

namespace vsp {

namespace {

Q terminal_weight(const SubdividedInstance& inst, int t) {
  return inst.g.edge(inst.g.incident(inst.g.terminals()[t])[0]).cap;
}

std::vector<int> side_terminals(const SubdividedInstance& inst, const CutCertificate& c) {
  const auto& terms = inst.g.terminals();
  bool side0 = c.side[terms[0]];
  std::vector<int> out;
  for (int i = 0; i < inst.g.k(); ++i)
    if (c.side[terms[i]] == side0) out.push_back(i);
  return out;
}

void finish(const SubdividedInstance& inst, CutCertificate& c) {
  c.value = cut_value(inst.g, c.side);
  c.weight_a = c.weight_b = 0;
  for (int i = 0; i < inst.g.k(); ++i)
    (c.side[inst.g.terminals()[i]] ? c.weight_a : c.weight_b) += terminal_weight(inst, i);
  Q lo = std::min(c.weight_a, c.weight_b);
  c.infinite = lo == 0;
  c.sparsity = c.infinite ? Q(0) : c.value / lo;
}

// The lone-pendant cut: the lightest terminal alone on side A.
CutCertificate pendant_cut(const SubdividedInstance& inst) {
  int best = 0;
  for (int i = 1; i < inst.g.k(); ++i)
    if (terminal_weight(inst, i) < terminal_weight(inst, best)) best = i;
  CutCertificate c;
  c.side.assign(inst.g.num_vertices(), 0);
  c.side[inst.g.terminals()[best]] = 1;
  finish(inst, c);
  return c;
}

CutCertificate no_split(const SubdividedInstance& inst, const char* source) {
  CutCertificate c;
  c.side.assign(inst.g.num_vertices(), 0);
  c.infinite = true;
  c.source = source;
  return c;
}

}  // namespace

int attachment_count(const SubdividedInstance& inst) {
  std::vector<VertexId> a = inst.attach;
  std::sort(a.begin(), a.end());
  return static_cast<int>(std::unique(a.begin(), a.end()) - a.begin());
}

bool better_cut(const SubdividedInstance& inst, const CutCertificate& a, const CutCertificate& b) {
  if (a.infinite != b.infinite) return !a.infinite;
  if (a.sparsity != b.sparsity) return a.sparsity < b.sparsity;
  if (a.value != b.value) return a.value < b.value;
  return side_terminals(inst, a) < side_terminals(inst, b);
}

CutCertificate evaluate_inner_cut(const SubdividedInstance& inst, const std::vector<char>& inner_side) {
  CutCertificate c;
  c.side.assign(inst.g.num_vertices(), 0);
  for (int v = 0; v < inst.num_inner; ++v) c.side[v] = inner_side[v];
  for (int i = 0; i < inst.g.k(); ++i) c.side[inst.g.terminals()[i]] = inner_side[inst.attach[i]];
  finish(inst, c);
  return c;
}

CutCertificate sparsest_cut_exact(const SubdividedInstance& inst, const SparsestCutOptions& opt) {
  if (inst.g.k() <= 1) return no_split(inst, "exact");
  if (inst.num_inner == 1) {
    CutCertificate c = pendant_cut(inst);
    c.trivial_cluster = true;
    c.source = "exact";
    return c;
  }
  // attachment groups in order of first appearance by vertex id
  std::map<VertexId, Q> weight;
  for (int i = 0; i < inst.g.k(); ++i) weight[inst.attach[i]] += terminal_weight(inst, i);
  std::vector<VertexId> groups;
  for (const auto& [v, w] : weight) groups.push_back(v);
  int a = static_cast<int>(groups.size());
  if (a > opt.budget)
    throw BudgetRefusal("exact sparsest cut over " + std::to_string(a) +
                        " attachment vertices exceeds the budget of " + std::to_string(opt.budget) +
                        "; use the heuristic");
  CutCertificate best = pendant_cut(inst);
  best.source = "exact";
  if (a >= 2) {
    // inner graph with integer capacities
    CapGraph inner(inst.num_inner);
    for (const Edge& e : inst.g.edges())
      if (e.u < inst.num_inner && e.v < inst.num_inner) inner.add_edge(e.u, e.v, e.cap);
    std::vector<std::int64_t> cap;
    Q scale(scale_capacities(inner, cap));
    std::vector<Q> gw;
    for (VertexId v : groups) gw.push_back(weight[v]);
    Dinic d(inst.num_inner + 2);
    int s = inst.num_inner, t = s + 1;
    for (EdgeId e = 0; e < inner.num_edges(); ++e)
      d.add_arc(inner.edge(e).u, inner.edge(e).v, cap[e], cap[e]);
    std::vector<int> to_src(a), to_snk(a);
    for (int i = 0; i < a; ++i) {
      to_src[i] = d.add_arc(s, groups[i], i == 0 ? Dinic::kInf : 0);
      to_snk[i] = d.add_arc(groups[i], t, 0);
    }
    for (long mask = 0; mask < (1L << (a - 1)) - 1; ++mask) {
      // group 0 always on side A; bit i-1 puts group i on side A
      for (int i = 1; i < a; ++i) {
        bool in_a = (mask >> (i - 1)) & 1;
        d.set_capacity(to_src[i], in_a ? Dinic::kInf : 0);
        d.set_capacity(to_snk[i], in_a ? 0 : Dinic::kInf);
      }
      d.reset();
      Q wa = gw[0], wb = 0;
      for (int i = 1; i < a; ++i) ((mask >> (i - 1)) & 1 ? wa : wb) += gw[i];
      Q value(mpz_class(d.run(s, t)));
      value /= scale;
      Q sp = value / std::min(wa, wb);
      if (sp > best.sparsity) continue;  // only ties and improvements need a certificate
      auto reach = d.reachable(s);
      std::vector<char> side(reach.begin(), reach.begin() + inst.num_inner);
      CutCertificate c = evaluate_inner_cut(inst, side);
      c.source = "exact";
      if (better_cut(inst, c, best)) best = std::move(c);
    }
  }
  return best;
}

CutCertificate sparsest_cut_heuristic(const SubdividedInstance& inst, std::uint64_t seed) {
  if (inst.g.k() <= 1) return no_split(inst, "heuristic");
  if (inst.num_inner == 1) {
    CutCertificate c = pendant_cut(inst);
    c.trivial_cluster = true;
    c.source = "heuristic";
    return c;
  }
  int n = inst.num_inner;
  CutCertificate best = pendant_cut(inst);
  auto consider = [&](const std::vector<char>& side) {
    CutCertificate c = evaluate_inner_cut(inst, side);
    if (!c.infinite && better_cut(inst, c, best)) best = std::move(c);
  };
  auto sweep = [&](const std::vector<VertexId>& order) {
    std::vector<char> side(n, 0);
    for (int i = 0; i + 1 < n; ++i) {
      side[order[i]] = 1;
      consider(side);
    }
  };
  // Fiedler vector of G_S with terminal weights folded into the diagonal
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : inst.g.edges()) {
    double w = e.cap.get_d();
    if (e.u < n && e.v < n) {
      lap(e.u, e.v) -= w;
      lap(e.v, e.u) -= w;
      lap(e.u, e.u) += w;
      lap(e.v, e.v) += w;
    }
  }
  Eigen::VectorXd tw = Eigen::VectorXd::Constant(n, 1e-3);
  for (int i = 0; i < inst.g.k(); ++i) tw(inst.attach[i]) += terminal_weight(inst, i).get_d();
  Eigen::VectorXd inv_sqrt = tw.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd norm = inv_sqrt.asDiagonal() * lap * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(norm);
  for (int col = 1; col < std::min(n, 4); ++col) {
    Eigen::VectorXd f = inv_sqrt.cwiseProduct(es.eigenvectors().col(col));
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return f(x) < f(y); });
    sweep(order);
  }
  // BFS orders from a few attachment vertices
  std::mt19937_64 rng(seed);
  std::vector<VertexId> roots(inst.attach.begin(), inst.attach.end());
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::shuffle(roots.begin(), roots.end(), rng);
  if (roots.size() > 6) roots.resize(6);
  for (VertexId r : roots) {
    std::vector<VertexId> order{r};
    std::vector<char> seen(n, 0);
    seen[r] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (EdgeId e : inst.g.incident(order[i])) {
        VertexId w = inst.g.other(e, order[i]);
        if (w < n && !seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
      }
    for (VertexId v = 0; v < n; ++v)
      if (!seen[v]) order.push_back(v);
    sweep(order);
  }
  // local moves from the incumbent
  if (!best.infinite) {
    std::vector<char> side(best.side.begin(), best.side.begin() + n);
    bool inner_split = std::count(side.begin(), side.end(), 1) % n != 0;
    for (int pass = 0; inner_split && pass < n; ++pass) {
      bool improved = false;
      for (VertexId v = 0; v < n; ++v) {
        side[v] ^= 1;
        CutCertificate c = evaluate_inner_cut(inst, side);
        if (!c.infinite && better_cut(inst, c, best) && c.sparsity < best.sparsity) {
          best = std::move(c);
          improved = true;
        } else {
          side[v] ^= 1;
        }
      }
      if (!improved) break;
    }
  }
  best.source = "heuristic";
  return best;
}

WellLinkedCheck is_well_linked(const SubdividedInstance& inst, const Q& alpha,
                               const SparsestCutOptions& opt, bool allow_heuristic) {
  WellLinkedCheck r;
  try {
    r.cut = sparsest_cut_exact(inst, opt);
    r.certified = true;
  } catch (const BudgetRefusal&) {
    if (!allow_heuristic) throw;
    r.cut = sparsest_cut_heuristic(inst);
  }
  if (r.cut.infinite || r.cut.trivial_cluster) {
    r.well_linked = r.certified || r.cut.trivial_cluster;
    r.certified = true;
    return r;
  }
  if (r.cut.sparsity < alpha) {
    r.well_linked = false;
    r.certified = true;  // a violating cut is a proof either way
  } else {
    r.well_linked = r.certified;
  }
  return r;
}

WellLinkedCheck is_well_linked(const CapGraph& g, std::span<const VertexId> s, const Q& alpha,
                               const SparsestCutOptions& opt, bool allow_heuristic) {
  return is_well_linked(subdivide_boundary(g, s), alpha, opt, allow_heuristic);
}

}  // namespace vsp
