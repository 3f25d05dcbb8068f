#include <benchmark/benchmark.h>

#include <cmath>

#include "gdchfif/attractor.hpp"
#include "gdchfif/evaluator.hpp"
#include "gdchfif/solver.hpp"

using namespace gdchfif;

namespace {

GDIFSystem example() {
  std::vector<GeneralizedDataset> ds;
  ds.push_back(validate_dataset(
      {{0, 5, 5}, {1, 4, 4}, {2, 1, 1}, {3, 1, 1}, {4, 4, 4}, {5, 5, 5}}, 1));
  ds.push_back(validate_dataset(
      {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {3, 2, 2}, {4, 1, 1}}, 2));
  const GraphSpec g = contiguous_graph({{3, 2}, {1, 3}});
  return build_system(std::move(ds), g,
                      uniform_scaling(g, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

void BM_BuildSystem(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(example());
}
BENCHMARK(BM_BuildSystem);

void BM_ApplyT(benchmark::State& state) {
  const GDIFSystem sys = example();
  const FunctionList f = initial_functions(sys, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_T(sys, f));
}
BENCHMARK(BM_ApplyT)->Arg(64)->Arg(1024)->Arg(16384);

void BM_SolveFixedPoint(benchmark::State& state) {
  const GDIFSystem sys = example();
  FixedPointOptions o;
  o.grid_density = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_fixed_point(sys, o));
}
BENCHMARK(BM_SolveFixedPoint)->Arg(64)->Arg(1024);

void BM_HutchinsonStep(benchmark::State& state) {
  const GDIFSystem sys = example();
  const SnapGrid snap = snap_grid_for(sys, std::ldexp(1.0, -13));
  VertexSets s = knot_sets(sys);
  for (int i = 0; i < state.range(0); ++i) s = hutchinson_step(sys, s, snap);
  for (auto _ : state) benchmark::DoNotOptimize(hutchinson_step(sys, s, snap));
  state.counters["points"] =
      static_cast<double>(s[0].points.size() + s[1].points.size());
}
BENCHMARK(BM_HutchinsonStep)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Hausdorff(benchmark::State& state) {
  const GDIFSystem sys = example();
  ChaosOptions o;
  o.steps = static_cast<std::size_t>(state.range(0));
  const VertexSets a = chaos_game(sys, o);
  o.seed = 2;
  const VertexSets b = chaos_game(sys, o);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b));
}
BENCHMARK(BM_Hausdorff)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_ChaosGame(benchmark::State& state) {
  const GDIFSystem sys = example();
  ChaosOptions o;
  o.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chaos_game(sys, o));
}
BENCHMARK(BM_ChaosGame)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
