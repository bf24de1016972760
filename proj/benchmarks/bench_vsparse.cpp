#include <benchmark/benchmark.h>

#include <vector>

#include "vsparse/cut_sparsifier.hpp"
#include "vsparse/flow_sparsifier.hpp"
#include "vsparse/generators.hpp"
#include "vsparse/maxflow.hpp"
#include "vsparse/routing.hpp"
#include "vsparse/sparsest_cut.hpp"
#include "vsparse/verifier.hpp"

using namespace vsp;

namespace {

std::vector<VertexId> interior(const CapGraph& g) {
  std::vector<VertexId> s;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!g.is_terminal(v)) s.push_back(v);
  return s;
}

// terminal 0 against all others on an n x n grid
void BM_MaxFlow(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  CapGraph g = gen_grid(n, n, 8, 1);
  std::vector<VertexId> a{g.terminals()[0]};
  std::vector<VertexId> b(g.terminals().begin() + 1, g.terminals().end());
  for (auto _ : st) benchmark::DoNotOptimize(max_flow(g, a, b).value);
  st.counters["vertices"] = g.num_vertices();
}
BENCHMARK(BM_MaxFlow)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

// exact sparsest cut of a grid interior; cost is 2^z in the boundary size
void BM_SparsestCutExact(benchmark::State& st) {
  CapGraph g = gen_grid(4, 4, static_cast<int>(st.range(0)), 2);
  auto s = interior(g);
  auto inst = subdivide_boundary(g, s);
  for (auto _ : st) benchmark::DoNotOptimize(sparsest_cut_exact(inst).sparsity);
  st.counters["z"] = static_cast<double>(st.range(0));
}
BENCHMARK(BM_SparsestCutExact)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_CutBuildUnit(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  CapGraph g = gen_random_unit(n, 2 * n, 6, 2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(build_cut_sparsifier_unit(g).h.num_vertices());
  st.counters["vertices"] = g.num_vertices();
}
BENCHMARK(BM_CutBuildUnit)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_FlowBuildAggressive(benchmark::State& st) {
  CapGraph g = gen_dumbbell(6, static_cast<int>(st.range(0)), 1);
  for (auto _ : st) benchmark::DoNotOptimize(build_flow_sparsifier_unit(g).h.num_vertices());
  st.counters["vertices"] = g.num_vertices();
}
BENCHMARK(BM_FlowBuildAggressive)->Arg(5)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

// uniform demands, exact rational simplex against the float path
void BM_Routing(benchmark::State& st) {
  CapGraph g = gen_grid(4, 4, 5, 4);
  DemandSet d = uniform_demands(g.k());
  RoutingOptions o;
  o.method = st.range(0) ? RoutingOptions::Method::Exact : RoutingOptions::Method::Float;
  for (auto _ : st) benchmark::DoNotOptimize(min_congestion_routing(g, d, o).eta);
  st.SetLabel(st.range(0) ? "exact" : "float");
}
BENCHMARK(BM_Routing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifyCut(benchmark::State& st) {
  CapGraph g = gen_random_unit(24, 48, static_cast<int>(st.range(0)), 2, 5);
  auto s = build_cut_sparsifier_unit(g);
  for (auto _ : st) benchmark::DoNotOptimize(verify_cut_quality(g, s.h, 3).q_observed);
  st.counters["k"] = static_cast<double>(st.range(0));
}
BENCHMARK(BM_VerifyCut)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_VerifyFlow(benchmark::State& st) {
  CapGraph g = gen_dumbbell(6, 6, 2);
  auto s = build_flow_sparsifier_unit(g);
  FlowVerifyOptions o;
  o.samples = 2;
  o.adversarial_steps = 2;
  for (auto _ : st) benchmark::DoNotOptimize(verify_flow_quality(g, s.h, 68, o).q_observed);
}
BENCHMARK(BM_VerifyFlow)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
