#include "vsparse/well_linked.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "vsparse/errors.hpp"

namespace vsp {

namespace {

const Q kThird = frac(1, 3);

struct Work {
  std::vector<VertexId> vertices;
  Q boundary;
};

// Largest boundary first, then smallest member.
std::size_t pick_next(const std::vector<Work>& w) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i].boundary > w[best].boundary ||
        (w[i].boundary == w[best].boundary && w[i].vertices[0] < w[best].vertices[0]))
      best = i;
  }
  return best;
}

Work make_work(const CapGraph& g, std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  Q b = boundary_capacity(g, v);
  return {std::move(v), b};
}

ClusterCert finalize(const Work& w, const Q& z, CutCertificate cut, bool certified) {
  ClusterCert c;
  c.vertices = w.vertices;
  c.boundary = w.boundary;
  c.level = boundary_level(w.boundary, z);
  c.source = cut.source.empty() ? "exact" : cut.source;
  c.sparsest = std::move(cut);
  c.certified = certified;
  return c;
}

SplitRecord record_split(const CapGraph& g, const SubdividedInstance& inst, const Work& r,
                         const CutCertificate& cut, std::vector<VertexId>& a,
                         std::vector<VertexId>& b) {
  for (int v = 0; v < inst.num_inner; ++v)
    (cut.side[v] ? a : b).push_back(inst.inner_to_orig[v]);
  SplitRecord s;
  s.parent = r.vertices;
  s.parent_boundary = r.boundary;
  s.sparsity = cut.sparsity;
  s.smaller_boundary = boundary_capacity(g, cut.weight_a <= cut.weight_b ? a : b);
  s.source = cut.source;
  return s;
}

Decomposition run(const CapGraph& g, std::span<const VertexId> s, const DecompOptions& opt,
                  DecompKind kind) {
  Decomposition d;
  d.kind = kind;
  d.weak_mult = opt.weak_mult;
  d.parent.assign(s.begin(), s.end());
  std::sort(d.parent.begin(), d.parent.end());
  d.z = boundary_capacity(g, d.parent);
  if (s.empty()) return d;
  std::vector<Work> work;
  if (kind == DecompKind::Strong) {
    if (!induced_connected(g, d.parent))
      throw InputError("strong_decompose: G[S] is not connected");
    work.push_back(make_work(g, d.parent));
  } else {
    for (auto& comp : induced_components(g, d.parent)) work.push_back(make_work(g, comp));
  }
  while (!work.empty()) {
    std::size_t i = pick_next(work);
    Work r = std::move(work[i]);
    work.erase(work.begin() + static_cast<long>(i));
    auto inst = subdivide_boundary(g, r.vertices);
    CutCertificate cut;
    bool certified = true;
    if (kind == DecompKind::Strong) {
      cut = sparsest_cut_exact(inst, opt.cut);
    } else {
      try {
        cut = sparsest_cut_exact(inst, opt.cut);
      } catch (const BudgetRefusal&) {
        if (!opt.allow_heuristic) throw;
        cut = sparsest_cut_heuristic(inst, opt.seed);
        certified = false;
      }
    }
    bool sparse = !cut.infinite && !cut.trivial_cluster &&
                  (kind == DecompKind::Strong ? cut.sparsity < kThird
                                              : below_weak_threshold(cut.sparsity, d.z, opt.weak_mult));
    if (!sparse) {
      d.clusters.push_back(finalize(r, d.z, std::move(cut), certified));
      continue;
    }
    std::vector<VertexId> a, b;
    d.splits.push_back(record_split(g, inst, r, cut, a, b));
    if (a.empty() || b.empty()) throw InternalError("sparse cut does not split the cluster");
    work.push_back(make_work(g, std::move(a)));
    work.push_back(make_work(g, std::move(b)));
  }
  std::sort(d.clusters.begin(), d.clusters.end(),
            [](const ClusterCert& x, const ClusterCert& y) { return x.vertices[0] < y.vertices[0]; });
  for (const auto& c : d.clusters) d.boundary_tally += c.boundary;
  return d;
}

}  // namespace

bool below_weak_threshold(const Q& sparsity, const Q& z, long mult) {
  if (sparsity <= 0) return true;
  // sparsity < 1/(mult * L), L = max(1, log2 z)
  if (z <= 2) return sparsity * mult < 1;
  if (!is_integer(z)) {
    return sparsity.get_d() * static_cast<double>(mult) * std::log2(z.get_d()) < 1.0;
  }
  // p/q * mult * log2 z < 1  <=>  z^(p*mult) < 2^q
  const mpz_class& p = sparsity.get_num();
  const mpz_class& q = sparsity.get_den();
  double lhs = p.get_d() * static_cast<double>(mult) * std::log2(z.get_d());
  double rhs = q.get_d();
  if (lhs < 0.99 * rhs) return true;
  if (lhs > 1.01 * rhs) return false;
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) return lhs < rhs;
  mpz_class zp, two;
  mpz_pow_ui(zp.get_mpz_t(), z.get_num_mpz_t(), p.get_ui() * static_cast<unsigned long>(mult));
  mpz_ui_pow_ui(two.get_mpz_t(), 2, q.get_ui());
  return zp < two;
}

double weak_threshold(double z, long mult) {
  return 1.0 / (static_cast<double>(mult) * std::max(1.0, std::log2(std::max(z, 1.0))));
}

int boundary_level(const Q& boundary, const Q& z) {
  if (boundary <= 0 || z <= 0) return 0;
  int i = 1;
  Q lo = z / 2;
  while (!(boundary > lo)) {
    lo /= 2;
    ++i;
  }
  return i;
}

Decomposition weak_decompose(const CapGraph& g, std::span<const VertexId> s, const DecompOptions& opt) {
  return run(g, s, opt, DecompKind::Weak);
}

Decomposition strong_decompose(const CapGraph& g, std::span<const VertexId> s,
                               const DecompOptions& opt) {
  return run(g, s, opt, DecompKind::Strong);
}

bool CertReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.ok; });
}

void CertReport::add(std::string name, bool ok, std::string detail) {
  items.push_back({std::move(name), ok, std::move(detail)});
}

CertReport certify_decomposition(const CapGraph& g, const Decomposition& d,
                                 const SparsestCutOptions& opt) {
  CertReport rep;
  // partition
  std::vector<int> owner(g.num_vertices(), -1);
  bool disjoint = true, inside = true;
  std::vector<char> in_parent(g.num_vertices(), 0);
  for (VertexId v : d.parent) in_parent[v] = 1;
  std::size_t covered = 0;
  for (std::size_t c = 0; c < d.clusters.size(); ++c) {
    for (VertexId v : d.clusters[c].vertices) {
      if (!g.valid_vertex(v) || !in_parent[v]) {
        inside = false;
        continue;
      }
      if (owner[v] >= 0) disjoint = false;
      owner[v] = static_cast<int>(c);
      ++covered;
    }
  }
  rep.add("clusters disjoint", disjoint);
  rep.add("clusters inside S", inside);
  rep.add("clusters cover S", disjoint && inside && covered == d.parent.size());
  Q z = boundary_capacity(g, d.parent);
  rep.add("recorded z", z == d.z, to_string(z));
  Q tally = 0;
  bool bounded = true, recorded = true;
  std::map<int, long> per_level;
  for (const auto& c : d.clusters) {
    if (c.vertices.empty()) continue;
    std::vector<VertexId> vs;
    for (VertexId v : c.vertices)
      if (g.valid_vertex(v)) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    Q b = boundary_capacity(g, vs);
    tally += b;
    if (b > z) bounded = false;
    if (b != c.boundary) recorded = false;
    ++per_level[boundary_level(b, z)];
  }
  rep.add("|out(R)| <= |out(S)|", bounded);
  rep.add("recorded boundaries", recorded);
  rep.add("recorded tally", tally == d.boundary_tally, to_string(tally));
  if (d.kind == DecompKind::Weak) {
    rep.add("sum |out(R)| <= 1.2 |out(S)|", tally * 5 <= z * 6, to_string(tally) + " vs " + to_string(z));
    bool splits_ok = true, balanced = true;
    for (const auto& s : d.splits) {
      if (!below_weak_threshold(s.sparsity, z, d.weak_mult)) splits_ok = false;
      if (s.smaller_boundary * 100 > s.parent_boundary * 51) balanced = false;
    }
    rep.add("every split below threshold", splits_ok);
    rep.add("smaller side boundary <= 0.51 |out(R)|", balanced);
  } else {
    rep.add("sum |out(R)| <= 3 z^3", tally <= 3 * z * z * z, to_string(tally));
    bool levels = true;
    std::string detail;
    for (const auto& [i, cnt] : per_level) {
      if (i <= 0) continue;
      if (i >= 20) continue;  // 2^(3i+3) exceeds any desk-scale count
      long bound = 1L << (3 * i + 3);
      if (cnt > bound) levels = false;
      detail += "S_" + std::to_string(i) + "=" + std::to_string(cnt) + " ";
    }
    rep.add("|S_i| <= 2^(3i+3)", levels, detail);
  }
  // well-linkedness of every cluster
  bool wl = true, skipped = false, connected = true;
  for (const auto& c : d.clusters) {
    if (c.vertices.empty()) continue;
    try {
      if (d.kind == DecompKind::Strong && !induced_connected(g, c.vertices)) connected = false;
      auto inst = subdivide_boundary(g, c.vertices);
      auto cut = sparsest_cut_exact(inst, opt);
      if (cut.infinite || cut.trivial_cluster) continue;
      bool ok = d.kind == DecompKind::Strong ? !(cut.sparsity < kThird)
                                             : !below_weak_threshold(cut.sparsity, z, d.weak_mult);
      if (!ok) wl = false;
    } catch (const BudgetRefusal&) {
      skipped = true;
    } catch (const InputError&) {
      wl = false;
      connected = false;
    }
  }
  rep.add(d.kind == DecompKind::Strong ? "every cluster 1/3-well-linked (exact)"
                                       : "no cluster has a cut below the weak threshold (exact)",
          wl, skipped ? "some clusters beyond the exact budget were not rechecked" : "");
  if (d.kind == DecompKind::Strong) rep.add("clusters connected", connected);
  return rep;
}

std::string dump_decomposition(const Decomposition& d) {
  std::ostringstream out;
  out << "# kind " << (d.kind == DecompKind::Strong ? "strong" : "weak") << " z " << to_string(d.z)
      << " tally " << to_string(d.boundary_tally) << " clusters " << d.clusters.size() << " splits "
      << d.splits.size() << '\n';
  for (const auto& c : d.clusters) {
    out << "c " << c.level << ' ';
    if (d.kind == DecompKind::Strong)
      out << "1/3";
    else
      out << weak_threshold(d.z.get_d(), d.weak_mult);
    for (VertexId v : c.vertices) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

}  // namespace vsp
