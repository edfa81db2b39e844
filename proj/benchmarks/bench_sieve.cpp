#include <benchmark/benchmark.h>

#include "primecert/primes.hpp"

using namespace primecert;

static void BM_sieve(benchmark::State& state) {
  auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto primes = sieve_primes(limit);
    benchmark::DoNotOptimize(primes.size());
  }
}
BENCHMARK(BM_sieve)->Arg(100000)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

static void BM_interval_count(benchmark::State& state) {
  Sieve sieve(16000000);
  std::uint64_t n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(interval_prime_count(15, 1, n, sieve));
    n = n % 1000000 + 2;
  }
}
BENCHMARK(BM_interval_count);

static void BM_legendre(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(legendre_nu(7, 1000000));
}
BENCHMARK(BM_legendre);

BENCHMARK_MAIN();
