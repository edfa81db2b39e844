#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "primecert/ratio_config.hpp"

using namespace primecert;
using primecert::test::oracle_ln;

namespace {
std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
}  // namespace

TEST_CASE("make_config validates and cancels") {
  RatioConfig c = make_config(1, Integer(1), ints({2, 3}), ints({1, 1, 3}));
  CHECK(c.a == ints({2}));
  CHECK(c.b == ints({1, 1}));
  CHECK(c.L == Integer(2));
  CHECK(c.a1() == Integer(2));
  CHECK(c.b1() == Integer(1));

  CHECK_THROWS_AS(make_config(1, Integer(1), ints({2}), ints({1})), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, Integer(1), ints({3}), ints({1, 1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_config(2, Integer(1), ints({3, 4}), ints({2, 5})),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_config(0, Integer(1), ints({1}), ints({1})), std::invalid_argument);
}

TEST_CASE("config ids are stable and distinguish configs") {
  RatioConfig a = preset("erdos");
  RatioConfig b = preset("bachraoui");
  CHECK(a.config_id != b.config_id);
  CHECK(a.config_id == preset("erdos").config_id);
  CHECK(!a.config_id.empty());
}

TEST_CASE("presets have the classical shapes") {
  RatioConfig e = preset("erdos");
  CHECK(e.k == 1);
  CHECK(e.a == ints({2}));
  CHECK(e.b == ints({1, 1}));

  RatioConfig ba = preset("bachraoui");
  CHECK(ba.k == 2);
  CHECK(ba.a1() == Integer(6));
  CHECK(ba.b1() == Integer(4));

  RatioConfig sa = preset("sainose");
  CHECK(sa.k == 2);

  RatioConfig b4 = preset("balliet4");
  CHECK(b4.k == 4);
  CHECK(b4.a1() == Integer(30));
  CHECK(b4.b1() == Integer(24));

  CHECK_THROWS_AS(preset("nope"), std::invalid_argument);
  CHECK(preset_names().size() == 4);
}

TEST_CASE("compiling {2,3} at k=3 gives the known entry lists") {
  RatioConfig c = compile_prime_set(3, make_prime_set({2, 3}));
  CHECK(c.a == ints({24, 9, 4, 2}));
  CHECK(c.b == ints({18, 12, 8, 1}));
  CHECK(c.a_scale == Integer(6));
  CHECK(c.L == Integer(72));  // k (k+1) Q
  REQUIRE(c.prime_set.has_value());
  CHECK(c.prime_set->Q == Integer(6));
}

TEST_CASE("compiled configs balance sums for several sets") {
  for (long k : {2L, 5L, 6L}) {
    RatioConfig c = compile_prime_set(k, make_prime_set({2, 3, 5}));
    Integer sa(0), sb(0);
    for (const auto& v : c.a) sa += v;
    for (const auto& v : c.b) sb += v;
    CHECK(sa == sb);
    CHECK(c.a1() == Integer((k + 1) * 30));
    CHECK(c.b1() == Integer(k * 30));
    CHECK(c.L == Integer(k * (k + 1) * 30));
  }
}

TEST_CASE("direct weight equals the totient closed form") {
  Rational w(1, 1000000);
  for (long k : {2L, 3L, 5L}) {
    PrimeSet set = make_prime_set(k >= 5 ? std::vector<std::uint64_t>{2, 3, 5}
                                         : std::vector<std::uint64_t>{2, 3});
    RatioConfig cfg = compile_prime_set(k, set);
    Enclosure direct = weight_direct(cfg, w);
    Enclosure closed = weight_closed_form(k, set, w);
    CHECK(direct.lo() <= closed.hi());
    CHECK(closed.lo() <= direct.hi());
    CHECK(direct.hi() - direct.lo() <= w);
    CHECK(closed.hi() - closed.lo() <= w);
  }
}

TEST_CASE("closed-form weight matches the oracle for k=3, {2,3}") {
  // phi(6) ((k+1) ln(k+1) - k ln k) = 2 (4 ln 4 - 3 ln 3) = 16 ln 2 - 6 ln 3
  PrimeSet set = make_prime_set({2, 3});
  Enclosure w = weight_closed_form(3, set, Rational(1, 1000000));
  Enclosure ref = oracle_ln(Rational(2)).scale(Rational(16)) -
                  oracle_ln(Rational(3)).scale(Rational(6));
  CHECK(w.lo() <= ref.hi());
  CHECK(ref.lo() <= w.hi());
}
