#include <benchmark/benchmark.h>

#include "mahlercf/conditions.hpp"
#include "mahlercf/laurent.hpp"
#include "mahlercf/recurrence.hpp"
#include "mahlercf/search.hpp"

using namespace mahlercf;

static void BM_ResidueScanner(benchmark::State& state) {
  const PrimeModulus p(static_cast<std::uint64_t>(state.range(0)));
  ResidueScanner scanner(p);
  // a condition pair never hits zero, so every iteration runs to the horizon
  const auto [u, v] = satisfying_pairs(p).begin()->first;
  for (auto _ : state) benchmark::DoNotOptimize(scanner.first_beta_zero(u, v, 10'000));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_ResidueScanner)->Arg(7)->Arg(1009)->Unit(benchmark::kMicrosecond);

static void BM_ScanPrime(benchmark::State& state) {
  const PrimeModulus p(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_prime(p, 10'000));
}
BENCHMARK(BM_ScanPrime)->Arg(13)->Arg(47)->Unit(benchmark::kMillisecond);

static void BM_Density(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(density(state.range(0), 1000));
}
BENCHMARK(BM_Density)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_RationalRecurrence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto run = init_run(Rational(2), Rational(3));
    run.extend(n);
    benchmark::DoNotOptimize(run.beta(n));
  }
}
BENCHMARK(BM_RationalRecurrence)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_SeriesExtraction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = expand_g(Rational(2), Rational(3), default_depth_for_terms(n));
  for (auto _ : state) benchmark::DoNotOptimize(cf_extract(g, n));
}
BENCHMARK(BM_SeriesExtraction)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
