#include "vsparse/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "vsparse/errors.hpp"

namespace vsp {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void attach_terminals(CapGraph& g, int n, int k, int max_deg, Rng& rng,
                      const std::vector<VertexId>& spots) {
  for (int i = 0; i < k; ++i) {
    VertexId t = g.add_vertex();
    int deg = pick(rng, 1, std::max(1, max_deg));
    for (int j = 0; j < deg; ++j) {
      VertexId v = spots.empty() ? pick(rng, 0, n - 1) : spots[pick(rng, 0, int(spots.size()) - 1)];
      g.add_edge(t, v, 1);
    }
    g.add_terminal(t);
  }
}

CapGraph random_interior(int n, int m, Rng& rng) {
  if (n < 1) throw ParamError("need at least one interior vertex");
  CapGraph g(n);
  // random spanning tree keeps it connected
  for (int v = 1; v < n; ++v) g.add_edge(v, pick(rng, 0, v - 1), 1);
  for (int i = n - 1; i < m && n > 1; ++i) {
    int u = pick(rng, 0, n - 1), v = pick(rng, 0, n - 2);
    if (v >= u) ++v;
    g.add_edge(u, v, 1);
  }
  return g;
}

}  // namespace

CapGraph gen_random_unit(int n, int m, int k, int max_term_deg, std::uint64_t seed) {
  Rng rng(seed);
  CapGraph g = random_interior(n, m, rng);
  attach_terminals(g, n, k, max_term_deg, rng, {});
  return g;
}

CapGraph gen_random_capacitated(int n, int m, int k, int max_term_deg, std::uint64_t seed) {
  Rng rng(seed);
  CapGraph g = gen_random_unit(n, m, k, max_term_deg, seed);
  for (EdgeId e = 0; e < g.num_edges(); ++e) g.set_capacity(e, frac(pick(rng, 2, 8), 2));
  return g;
}

CapGraph gen_dumbbell(int k, int side, std::uint64_t seed) {
  if (side < 1) throw ParamError("dumbbell side must be positive");
  Rng rng(seed);
  CapGraph g(2 * side);
  for (int h = 0; h < 2; ++h)
    for (int a = 0; a < side; ++a)
      for (int b = a + 1; b < side; ++b) g.add_edge(h * side + a, h * side + b, 1);
  g.add_edge(0, side, 1);
  for (int i = 0; i < k; ++i) {
    VertexId t = g.add_vertex();
    int h = i % 2;
    g.add_edge(t, h * side + pick(rng, 0, side - 1), 1);
    g.add_terminal(t);
  }
  return g;
}

CapGraph gen_grid(int rows, int cols, int k, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw ParamError("grid dimensions must be positive");
  Rng rng(seed);
  CapGraph g(rows * cols);
  std::vector<VertexId> border;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1, 1);
      if (r + 1 < rows) g.add_edge(v, v + cols, 1);
      if (r == 0 || c == 0 || r + 1 == rows || c + 1 == cols) border.push_back(v);
    }
  }
  attach_terminals(g, rows * cols, k, 1, rng, border);
  return g;
}

CapGraph gen_regular(int n, int d, int k, std::uint64_t seed) {
  if (n < 2 || d < 1 || (n * d) % 2) throw ParamError("regular graph needs n >= 2 and n*d even");
  Rng rng(seed);
  CapGraph g(n);
  std::vector<VertexId> stubs;
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < d; ++j) stubs.push_back(v);
  for (int attempt = 0;; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2)
      if (stubs[i] == stubs[i + 1]) ok = false;
    if (ok || attempt > 1000) break;
  }
  for (std::size_t i = 0; i < stubs.size(); i += 2)
    if (stubs[i] != stubs[i + 1]) g.add_edge(stubs[i], stubs[i + 1], 1);
  attach_terminals(g, n, k, 1, rng, {});
  return g;
}

CapGraph gen_welllinked(int k, int layers, std::uint64_t seed) {
  if (k < 1 || layers < 1) throw ParamError("welllinked needs k >= 1 and layers >= 1");
  (void)seed;  // the family is fully determined by (k, layers)
  CapGraph g(k * layers);
  for (int l = 0; l + 1 < layers; ++l)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) g.add_edge(l * k + a, (l + 1) * k + b, 1);
  if (layers == 1)
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b) g.add_edge(a, b, 1);
  for (int i = 0; i < k; ++i) {
    VertexId t = g.add_vertex();
    g.add_edge(t, i, 1);
    g.add_terminal(t);
  }
  return g;
}

}  // namespace vsp
