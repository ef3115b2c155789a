#include <benchmark/benchmark.h>

#include "gp/projection.hpp"

namespace {

void BM_CertifyDense(benchmark::State& state) {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  for (int s = 0; s < 4; ++s) m.uniform_refine();
  const auto V = gp::FeSpace::lagrange(m, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gp::certify_condition(V).kappa);
  state.counters["dofs"] = static_cast<double>(V.num_dofs());
}
BENCHMARK(BM_CertifyDense)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CertifyLanczos(benchmark::State& state) {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  for (int s = 0; s < 7; ++s) m.uniform_refine();
  const auto V = gp::FeSpace::lagrange(m, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gp::certify_condition(V, "", 0).kappa);
  state.counters["dofs"] = static_cast<double>(V.num_dofs());
}
BENCHMARK(BM_CertifyLanczos)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ChebyshevIterates(benchmark::State& state) {
  gp::Mesh m = gp::kuhn_initial_mesh(2, 2);
  for (int s = 0; s < 6; ++s) m.uniform_refine();
  const auto V = gp::FeSpace::lagrange(m, 2);
  const gp::ApproxOperator C(V);
  gp::Rng rng(1);
  const Eigen::VectorXd y = gp::random_broken(V, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gp::accelerated_iterates(C, y, 20).back().norm());
}
BENCHMARK(BM_ChebyshevIterates)->Unit(benchmark::kMillisecond);

} // namespace
