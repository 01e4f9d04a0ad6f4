#include <benchmark/benchmark.h>

#include "roughimg/specfun.hpp"

namespace {

using namespace roughimg;

void BM_hankel_pair(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    auto h = hankel1_01(t);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_hankel_pair)->Arg(5)->Arg(50)->Arg(119)->Arg(121)->Arg(1000);

void BM_halfcircle(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = halfcircle_term(10.0, {0.7, -1.1}, M, Hemisphere::lower);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * (M + 1));
}
BENCHMARK(BM_halfcircle)->Arg(256)->Arg(2048);

}  // namespace
