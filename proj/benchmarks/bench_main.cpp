#include <benchmark/benchmark.h>

#include "pcfcert/idf.hpp"
#include "pcfcert/pcf.hpp"
#include "pcfcert/valdyn.hpp"

using namespace pcfcert;

static void BM_ScanExceptions(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const unsigned jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_exceptions(2 * static_cast<std::uint64_t>(k) + 2, 100000, k, jobs));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ScanExceptions)->Args({3, 1})->Args({10, 1})->Args({10, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_FindIdfPrimeLarge(benchmark::State& state) {
  std::uint64_t d = 1000000000000ULL;
  for (auto _ : state) benchmark::DoNotOptimize(find_idf_prime(d++, 10));
}
BENCHMARK(BM_FindIdfPrimeLarge);

static void BM_Integrality(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int n = static_cast<int>(state.range(2));
  const int m = static_cast<int>(state.range(3));
  for (auto _ : state) benchmark::DoNotOptimize(integrality_certificate(d, k, n, m));
}
BENCHMARK(BM_Integrality)
    ->Args({3, 1, 2, 1})
    ->Args({3, 1, 2, 2})
    ->Args({5, 2, 1, 1})
    ->Args({5, 1, 2, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_SolveMod(benchmark::State& state) {
  const unsigned e = static_cast<unsigned>(state.range(0));
  const unsigned jobs = static_cast<unsigned>(state.range(1));
  const IdfWitness w{5, 0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_mod(5, 1, 2, 1, w, e, {}, jobs));
}
BENCHMARK(BM_SolveMod)->Args({1, 1})->Args({2, 1})->Args({2, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_ShiftRemainder(benchmark::State& state) {
  const BelyiPoly b = belyi_coeffs(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const unsigned n = static_cast<unsigned>(state.range(2));
  const Rat alpha(Int(3), Int(4));
  const Rat beta(Int(-2), Int(5));
  for (auto _ : state) benchmark::DoNotOptimize(shift_remainder(b, alpha, beta, n));
}
BENCHMARK(BM_ShiftRemainder)->Args({3, 1, 3})->Args({5, 2, 2})->Args({5, 2, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
