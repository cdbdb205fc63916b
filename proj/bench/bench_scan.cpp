#include <benchmark/benchmark.h>

#include "mafol/burns.hpp"
#include "mafol/scan.hpp"

using namespace mafol;

namespace {

PolyPotential mixed_quartic() {
  return parse_potential(
      "n=2; a=[2,0] b=[2,0] c=1; a=[0,2] b=[0,2] c=1; a=[3,0] b=[0,1] c=0.5; a=[0,1] b=[3,0] c=0.5");
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_AnalyzePoints(benchmark::State& state) {
  const auto p = mixed_quartic();
  const auto pts = random_samples(p, 20000, 1);
  for (auto _ : state) {
    auto rows = analyze_points(p, pts, kDefaultTolRank, exec_of(state));
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

void BM_BurnsCheck(benchmark::State& state) {
  const auto p = mixed_quartic();
  BurnsOptions opts;
  opts.grid_per_axis = 14;
  opts.exec = exec_of(state);
  for (auto _ : state) {
    auto rep = burns_check(p, opts);
    benchmark::DoNotOptimize(rep.ma_max_residual);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "openmp");
}

}  // namespace

BENCHMARK(BM_AnalyzePoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BurnsCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
