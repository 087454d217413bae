// Serial reference versus OpenMP path for each scan kernel.  The second
// benchmark argument selects the path: 0 serial, 1 parallel.

#include "colstr/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace colstr::kernels;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

std::vector<std::vector<std::uint32_t>> random_symmetric(std::size_t count, std::size_t n, std::uint32_t p) {
  std::mt19937_64 rng(7);
  std::vector<std::vector<std::uint32_t>> out(count, std::vector<std::uint32_t>(n * n));
  for (auto& g : out)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) g[i * n + j] = g[j * n + i] = static_cast<std::uint32_t>(rng() % p);
  return out;
}

void BM_RankScan(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::uint32_t p = 7;
  auto grams = random_symmetric(3, n, p);
  for (auto _ : state) benchmark::DoNotOptimize(rank_scan(grams, n, p, PointSet::AllNonzero, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(point_count(3, p, PointSet::AllNonzero)));
}
BENCHMARK(BM_RankScan)->ArgsProduct({{6, 12}, {0, 1}});

void BM_MaxIndependentSet(benchmark::State& state) {
  const std::size_t nvars = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::vector<std::uint64_t> masks;
  for (int k = 0; k < 40; ++k) masks.push_back(((rng() & rng()) & ((std::uint64_t{1} << nvars) - 1)) | (std::uint64_t{1} << (k % nvars)));
  for (auto _ : state) benchmark::DoNotOptimize(max_independent_set(masks, nvars, exec_of(state)));
}
BENCHMARK(BM_MaxIndependentSet)->ArgsProduct({{12, 18}, {0, 1}});

void BM_QuadricStrength(benchmark::State& state) {
  QuadricProducts products(colstr::SmallField::quadratic_extension(3), 4);
  // x1 x2 + x3 x4 has strength 1, so the search has to pass through s = 0.
  std::vector<std::uint8_t> coeffs(products.coefficient_count(), 0);
  coeffs[1] = 1;
  coeffs[products.coefficient_count() - 2] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(quadric_strength(products, coeffs, 2, exec_of(state)));
}
BENCHMARK(BM_QuadricStrength)->ArgsProduct({{4}, {0, 1}});

}  // namespace

BENCHMARK_MAIN();
