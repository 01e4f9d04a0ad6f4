#include <benchmark/benchmark.h>

#include "roughimg/imaging.hpp"

namespace {

using namespace roughimg;

void BM_sweep(benchmark::State& state) {
  const auto data = flat_oracle_data(0.8, 10.0, {1.5, 10.0, static_cast<int>(state.range(0))});
  const auto grid = ImagingGrid::parse("-5:5:101,0.3:1.3:51");
  for (auto _ : state) {
    auto r = sweep(grid, data, 256);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.nx1 * grid.nx2);
}
BENCHMARK(BM_sweep)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_indicator_direct(benchmark::State& state) {
  const auto data = flat_oracle_data(0.8, 10.0, {1.5, 10.0, static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(indicator({0.1, 0.8}, data, 256));
}
BENCHMARK(BM_indicator_direct)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
