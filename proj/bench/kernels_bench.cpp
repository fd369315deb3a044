// Serial reference against OpenMP kernels; parallel:0 is the serial build.

#include <benchmark/benchmark.h>

#include "rrm/experiments.hpp"
#include "rrm/kernels.hpp"
#include "rrm/matching.hpp"

namespace {

using rrm::kernels::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_NearestNeighbors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rrm::PointCloud x = rrm::uniform_sample(n, 2, rrm::RngSeed{1});
  const rrm::PointCloud y = rrm::uniform_sample(n, 2, rrm::RngSeed{2});
  for (auto _ : state) benchmark::DoNotOptimize(rrm::kernels::nearest_neighbors(x, y, false, exec_of(state)));
  state.SetComplexityN(state.range(0));
}

void BM_DistanceMatrix(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rrm::PointCloud x = rrm::uniform_sample(n, 3, rrm::RngSeed{1});
  const rrm::PointCloud y = rrm::uniform_sample(n, 3, rrm::RngSeed{2});
  for (auto _ : state) benchmark::DoNotOptimize(rrm::kernels::squared_distance_matrix(x, y, exec_of(state)));
}

void BM_MergedRrm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const rrm::PointCloud x = rrm::uniform_sample(n, 2, rrm::RngSeed{1});
  const rrm::PointCloud y = rrm::uniform_sample(n, 2, rrm::RngSeed{2});
  for (auto _ : state) benchmark::DoNotOptimize(rrm::merged_rrm(x, y, 8, rrm::RngSeed{3}, exec_of(state)));
  state.SetComplexityN(state.range(0));
}

BENCHMARK(BM_NearestNeighbors)->ArgsProduct({{512, 2048, 8192}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceMatrix)->ArgsProduct({{256, 1024}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MergedRrm)->ArgsProduct({{4096, 16384, 65536}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
