#include <benchmark/benchmark.h>

#include "hlab/curvature.hpp"
#include "hlab/exterior.hpp"
#include "hlab/holonomy.hpp"

namespace {

void BM_BuildAlgebra(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hlab::build_algebra(n));
}
BENCHMARK(BM_BuildAlgebra)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_CurvaturePoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hlab::StructureAlgebra alg = hlab::build_algebra(n);
  const hlab::MetricAnsatz g = hlab::family_G(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(hlab::compute_curvature(g, alg, 2.0));
}
BENCHMARK(BM_CurvaturePoint)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ExactClosedness(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hlab::StructureAlgebra alg = hlab::build_algebra(n);
  const hlab::KahlerForm omega = hlab::build_omega(n, hlab::Rational(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(hlab::check_closed(omega, alg));
}
BENCHMARK(BM_ExactClosedness)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_HolonomyDimension(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const hlab::StructureAlgebra alg = hlab::build_algebra(n);
  const hlab::MetricAnsatz g = hlab::family_G(n, 0.5);
  const double points[] = {1.3, 2.1, 3.7};
  for (auto _ : state) benchmark::DoNotOptimize(hlab::holonomy_dimension(g, alg, points));
}
BENCHMARK(BM_HolonomyDimension)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_IntegrateOde(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double u0 = hlab::canonical_profile(n, 0.5).u(1.001).value;
  for (auto _ : state) benchmark::DoNotOptimize(hlab::integrate_ode(n, 0.5, 1.001, u0, 4.0, 1e-10));
}
BENCHMARK(BM_IntegrateOde)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
