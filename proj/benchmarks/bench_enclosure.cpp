#include <benchmark/benchmark.h>

#include "primecert/enclosure.hpp"
#include "primecert/rational.hpp"

using namespace primecert;

static void BM_ln_enclosure(benchmark::State& state) {
  // width 10^-w; cost grows with the series length the width demands
  Rational width = Rational(1) / pow10(static_cast<unsigned>(state.range(0)));
  Rational q(17, 5);
  for (auto _ : state) {
    Enclosure e = ln_enclosure(q, width);
    benchmark::DoNotOptimize(e.lo());
  }
}
BENCHMARK(BM_ln_enclosure)->Arg(6)->Arg(12)->Arg(30)->Arg(60);

static void BM_ln_large_argument(benchmark::State& state) {
  Rational q(Integer(1) << 61, Integer(3));
  Rational width = Rational(1, 1000000000000LL);
  for (auto _ : state) {
    Enclosure e = ln_enclosure(q, width);
    benchmark::DoNotOptimize(e.lo());
  }
}
BENCHMARK(BM_ln_large_argument);

static void BM_rational_decimal(benchmark::State& state) {
  Rational q = Rational::from_string("2081740.830754");
  for (auto _ : state) {
    std::string s = q.to_decimal(3, round_dir::nearest);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_rational_decimal);

BENCHMARK_MAIN();
