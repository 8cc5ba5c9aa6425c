#include <benchmark/benchmark.h>

#include "digraphon/digraph.hpp"
#include "digraphon/eigen.hpp"
#include "digraphon/limits.hpp"
#include "digraphon/rng.hpp"
#include "digraphon/spectra.hpp"
#include "digraphon/stepkernel.hpp"

namespace {

using namespace digraphon;

RealMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  RealMatrix m(n, n);
  for (double& x : m.data()) x = 2.0 * rng.uniform() - 1.0;
  return m;
}

StepKernel random_kernel(std::size_t k, std::uint64_t seed) {
  return StepKernel::uniform_blocks(random_matrix(k, seed));
}

void BM_Eigenvalues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix m = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNCubed);

void BM_DigraphSpectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Digraph g = sample_w_random(bidirected_surrogate_digraphon(), n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(normalized_spectrum(g));
}
BENCHMARK(BM_DigraphSpectrum)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_CutNorm(benchmark::State& state) {
  const StepKernel w = random_kernel(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(cut_norm(w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CutNorm)->DenseRange(4, 20, 4);

void BM_OpNorm(benchmark::State& state) {
  const StepKernel w = random_kernel(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(op_norm_2to2(w));
}
BENCHMARK(BM_OpNorm)->Arg(8)->Arg(32)->Arg(128);

void BM_HomCountCycle(benchmark::State& state) {
  const Digraph g = sample_w_random(bidirected_surrogate_digraphon(), 60, 5);
  const Digraph c = cycle_digraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hom_count(c, g));
}
BENCHMARK(BM_HomCountCycle)->DenseRange(3, 5);

void BM_TracePower(benchmark::State& state) {
  const Digraph g = sample_w_random(bidirected_surrogate_digraphon(), 200, 6);
  for (auto _ : state) benchmark::DoNotOptimize(trace_power(g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TracePower)->Arg(4)->Arg(8);

void BM_HomDensityStep(benchmark::State& state) {
  const StepKernel w = random_kernel(8, 7);
  const Digraph c = cycle_digraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hom_density_step(c, w));
}
BENCHMARK(BM_HomDensityStep)->DenseRange(3, 7, 2);

void BM_SampleWRandom(benchmark::State& state) {
  const auto w = bidirected_surrogate_digraphon();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_w_random(w, n, ++seed));
}
BENCHMARK(BM_SampleWRandom)->Arg(200)->Arg(800);

void BM_RandomRegularGraph(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(random_regular_graph(2 * n, n, ++seed));
}
BENCHMARK(BM_RandomRegularGraph)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
