#include <benchmark/benchmark.h>

#include "gp/projection.hpp"

namespace {

gp::Mesh bench_mesh(int d) {
  gp::Mesh m = gp::kuhn_initial_mesh(d, 2);
  for (int s = 0; s < (d == 2 ? 6 : 3); ++s) m.uniform_refine();
  return m;
}

void BM_MassMatrix(benchmark::State& state) {
  const gp::Mesh m = bench_mesh(static_cast<int>(state.range(0)));
  const auto V = gp::FeSpace::lagrange(m, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(V.mass().nonZeros());
  state.counters["dofs"] = static_cast<double>(V.num_dofs());
}
BENCHMARK(BM_MassMatrix)->Args({2, 1})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_ApproxOperator(benchmark::State& state) {
  const gp::Mesh m = bench_mesh(static_cast<int>(state.range(0)));
  const auto V = gp::FeSpace::lagrange(m, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    const gp::ApproxOperator C(V);
    benchmark::DoNotOptimize(C.matrix().nonZeros());
  }
  state.counters["dofs"] = static_cast<double>(V.num_dofs());
}
BENCHMARK(BM_ApproxOperator)->Args({2, 1})->Args({2, 3})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_CrOperator(benchmark::State& state) {
  const gp::Mesh m = bench_mesh(static_cast<int>(state.range(0)));
  const auto V = gp::FeSpace::crouzeix_raviart(m);
  for (auto _ : state) {
    const gp::ApproxOperator C(V);
    benchmark::DoNotOptimize(C.matrix().nonZeros());
  }
}
BENCHMARK(BM_CrOperator)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace
