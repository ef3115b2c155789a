#include <benchmark/benchmark.h>

#include <random>

#include "gp/distance.hpp"
#include "gp/refinement.hpp"

namespace {

void BM_UniformRefine(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int sweeps = static_cast<int>(state.range(1));
  for (auto _ : state) {
    gp::Mesh m = gp::kuhn_initial_mesh(d, 2);
    for (int s = 0; s < sweeps; ++s) m.uniform_refine();
    benchmark::DoNotOptimize(m.num_active());
  }
}
BENCHMARK(BM_UniformRefine)->Args({2, 8})->Args({3, 6})->Unit(benchmark::kMillisecond);

void BM_BiSecLG(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int alpha = static_cast<int>(state.range(1));
  for (auto _ : state) {
    gp::Mesh m = gp::kuhn_initial_mesh(d, 2);
    gp::MarkingPolicy pol;
    pol.kind = gp::MarkingKind::Random;
    pol.fraction = 0.05;
    pol.max_marked = 2;
    const auto rep = gp::closure_benchmark(m, pol, 100, alpha);
    benchmark::DoNotOptimize(rep.envelope);
  }
}
BENCHMARK(BM_BiSecLG)->Args({2, 1})->Args({3, 1})->Args({3, 3})->Unit(benchmark::kMillisecond);

void BM_VertexDistance(benchmark::State& state) {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 4);
  for (int s = 0; s < 6; ++s) m.uniform_refine();
  for (auto _ : state) {
    const gp::ElementDistance dist(m, gp::DistanceKind::Vertex);
    benchmark::DoNotOptimize(dist.max_distance());
  }
  state.counters["elements"] = static_cast<double>(m.num_active());
}
BENCHMARK(BM_VertexDistance)->Unit(benchmark::kMillisecond);

} // namespace
