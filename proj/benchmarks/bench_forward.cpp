#include <benchmark/benchmark.h>

#include "roughimg/cauchy.hpp"
#include "roughimg/dense_lu.hpp"

namespace {

using namespace roughimg;

std::vector<SurfaceNode> nodes(double k, double window) {
  const auto t = TruncationConfig{}.resolve(window, 2 * pi / k);
  return quadrature_nodes(catalog("gamma1"), t.half_width, t.intervals, t.taper_width);
}

void BM_assemble_dirichlet(benchmark::State& state) {
  const double k = 10.0;
  const auto n = nodes(k, static_cast<double>(state.range(0)));
  const Discretization disc{catalog("gamma1"), n, n.back().s, 2 * 2 * pi / k, n[1].s - n[0].s};
  for (auto _ : state) {
    auto m = assemble_matrix(BoundaryCondition::dirichlet(), disc, k);
    benchmark::DoNotOptimize(m.data());
  }
  state.counters["nodes"] = static_cast<double>(n.size());
}
BENCHMARK(BM_assemble_dirichlet)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_lu_factor(benchmark::State& state) {
  const auto size = state.range(0);
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(size, size) + 4.0 * Eigen::MatrixXcd::Identity(size, size);
  for (auto _ : state) {
    DenseLu lu(m);
    benchmark::DoNotOptimize(lu.rcond());
  }
}
BENCHMARK(BM_lu_factor)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_lu_solve_many(benchmark::State& state) {
  const Eigen::Index size = 1024;
  const DenseLu lu(Eigen::MatrixXcd::Random(size, size) + 4.0 * Eigen::MatrixXcd::Identity(size, size));
  const Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Random(size, state.range(0));
  for (auto _ : state) {
    auto x = lu.solve(rhs);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_lu_solve_many)->Arg(1)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_cauchy_data_small(benchmark::State& state) {
  const MeasurementLine line{1.5, 3.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    auto d = cauchy_data(BoundaryCondition::dirichlet(), catalog("gamma1"), 10.0, line);
    benchmark::DoNotOptimize(d.us.data());
  }
}
BENCHMARK(BM_cauchy_data_small)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
