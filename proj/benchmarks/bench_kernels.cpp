// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "osearch/bench.hpp"
#include "osearch/kernels.hpp"

using namespace osearch;

namespace {

void BM_TwoDayProfile(benchmark::State& state) {
  const auto grid = kernels::centered_geometric_grid(PriceBounds(1, 100), state.range(0));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) {
    auto p = parallel ? kernels::two_day_profile_parallel(grid) : kernels::two_day_profile_serial(grid);
    benchmark::DoNotOptimize(p.accepted.data());
  }
  state.SetLabel(parallel ? "openmp" : "serial");
}
BENCHMARK(BM_TwoDayProfile)->ArgsProduct({{1000, 4000}, {0, 1}})->Unit(benchmark::kMillisecond);

const InstanceSet& sample_instances() {
  static const InstanceSet set =
      make_instances(load_prices(std::filesystem::path(OSEARCH_SAMPLE_DATA)));
  return set;
}

void BM_SweepOra(benchmark::State& state) {
  const auto grid = parse_error_grid("neg:0:0.5:500,pos:0:0.5:500");
  const Execution exec = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) {
    auto r = sweep_best_price(sample_instances(), {Algorithm::ora, 0.75, {}}, grid, {true, exec});
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_SweepOra)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SweepRbis(benchmark::State& state) {
  const Execution exec = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) {
    auto r = sweep_query(sample_instances(), {Algorithm::rbis, {3, 5}, 25, 50, 7, exec});
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}
BENCHMARK(BM_SweepRbis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
