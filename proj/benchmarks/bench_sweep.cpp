#include <benchmark/benchmark.h>

#include "primecert/primes.hpp"
#include "primecert/ratio_config.hpp"
#include "primecert/sweep.hpp"

using namespace primecert;

static void BM_point_eval_floor(benchmark::State& state) {
  RatioConfig cfg = compile_prime_set(5, make_prime_set({2, 3, 5}));
  Rational x(137, 360);
  for (auto _ : state) benchmark::DoNotOptimize(g_floor(cfg, x));
}
BENCHMARK(BM_point_eval_floor);

static void BM_point_eval_indicator(benchmark::State& state) {
  PrimeSet set = make_prime_set({2, 3, 5});
  IndicatorEvaluator ev(5, set);
  Rational x(137, 360);
  for (auto _ : state) benchmark::DoNotOptimize(ev.eval(x));
}
BENCHMARK(BM_point_eval_indicator);

static void BM_sweep_exhaustive(benchmark::State& state) {
  auto k = state.range(0);
  std::vector<std::uint64_t> primes = {2, 3, 5};
  if (k >= 7) primes.push_back(7);
  RatioConfig cfg = compile_prime_set(k, make_prime_set(primes));
  for (auto _ : state) {
    SweepReport rep = sweep(cfg, SweepMode::Exhaustive());
    benchmark::DoNotOptimize(rep.m_found);
  }
}
BENCHMARK(BM_sweep_exhaustive)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_sweep_engines(benchmark::State& state) {
  RatioConfig cfg = compile_prime_set(8, make_prime_set({2, 3, 5, 7, 19, 31}));
  SweepOptions opt;
  opt.engine = state.range(0) == 0 ? SweepEngine::indicator : SweepEngine::floor;
  for (auto _ : state) {
    SweepReport rep = sweep(cfg, SweepMode::Exhaustive(), opt);
    benchmark::DoNotOptimize(rep.m_found);
  }
}
BENCHMARK(BM_sweep_engines)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
