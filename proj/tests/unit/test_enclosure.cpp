#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "primecert/enclosure.hpp"
#include "primecert/errors.hpp"

using namespace primecert;
using primecert::test::oracle_ln;

namespace {
const Rational kWidth(1, Integer(1000000000000));  // 1e-12
}

TEST_CASE("interval basics") {
  Enclosure e(Rational(1, 3), Rational(1, 2));
  CHECK(e.contains(Rational(2, 5)));
  CHECK_FALSE(e.contains(Rational(2, 3)));
  CHECK_THROWS_AS(Enclosure(Rational(1), Rational(0)), std::invalid_argument);

  Enclosure f(Rational(-1), Rational(2));
  CHECK((e + f).lo() == Rational(-2, 3));
  CHECK((e + f).hi() == Rational(5, 2));
  CHECK((e - f).lo() == Rational(1, 3) - Rational(2));
  CHECK((-e).hi() == -Rational(1, 3));
  CHECK(e.scale(Rational(-2)).lo() == Rational(-1));
  CHECK(e.scale(Rational(-2)).hi() == Rational(-2, 3));
}

TEST_CASE("interval products cover all sign cases") {
  Enclosure a(Rational(-2), Rational(3));
  Enclosure b(Rational(-5), Rational(1, 2));
  Enclosure p = a.mul(b);
  // extreme products: (-2)(-5)=10 and 3*(-5)=-15
  CHECK(p.lo() == Rational(-15));
  CHECK(p.hi() == Rational(10));
  Enclosure q = a.div(Enclosure(Rational(1, 4), Rational(1, 2)));
  CHECK(q.lo() == Rational(-8));
  CHECK(q.hi() == Rational(12));
}

TEST_CASE("ln at exact points") {
  CHECK(ln_enclosure(Rational(1), kWidth).lo() == Rational(0));
  CHECK(ln_enclosure(Rational(1), kWidth).hi() == Rational(0));
  CHECK_THROWS_AS(ln_enclosure(Rational(0), kWidth), std::domain_error);
  CHECK_THROWS_AS(ln_enclosure(Rational(-2), kWidth), std::domain_error);
}

TEST_CASE("ln agrees with the independent oracle") {
  std::vector<Rational> points = {
      Rational(2),     Rational(3),      Rational(4),          Rational(10),
      Rational(17, 5), Rational(1, 2),   Rational(1, 1000),    Rational(22, 7),
      Rational(4096),  Rational(2, 3),   Rational(13020, 817), Rational(1000003),
      Rational(1, 7),  Rational(999, 998)};
  for (const Rational& q : points) {
    Enclosure mine = ln_enclosure(q, kWidth);
    Enclosure ref = oracle_ln(q);
    // both enclose the true value, so they must overlap; the oracle is
    // ~1e-30 wide, so any library error beyond 1e-12 breaks this
    CHECK(mine.lo() <= ref.hi());
    CHECK(ref.lo() <= mine.hi());
  }
}

TEST_CASE("ln width honors the request") {
  for (const Rational& q : {Rational(2), Rational(99, 7), Rational(1, 17)}) {
    Enclosure e = ln_enclosure(q, kWidth);
    CHECK(e.hi() - e.lo() <= kWidth);
  }
}

TEST_CASE("nested widths nest") {
  Rational q(355, 113);
  Enclosure wide = ln_enclosure(q, Rational(1, 1000));
  Enclosure mid = ln_enclosure(q, Rational(1, 1000000));
  Enclosure tight = ln_enclosure(q, kWidth);
  CHECK(wide.lo() <= mid.lo());
  CHECK(mid.lo() <= tight.lo());
  CHECK(tight.hi() <= mid.hi());
  CHECK(mid.hi() <= wide.hi());
}

TEST_CASE("ln respects additivity") {
  Enclosure l6 = ln_enclosure(Rational(6), kWidth);
  Enclosure l2 = ln_enclosure(Rational(2), kWidth);
  Enclosure l3 = ln_enclosure(Rational(3), kWidth);
  Enclosure sum = l2 + l3;
  CHECK(l6.lo() <= sum.hi());
  CHECK(sum.lo() <= l6.hi());
}

TEST_CASE("sqrt_upper is an upper bound with small slack") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    Rational x(Integer((long)(rng() % 1000000 + 1)), Integer((long)(rng() % 1000 + 1)));
    Rational u = sqrt_upper(x);
    CHECK(u * u >= x);
    // (u - 2^-15)^2 < x, i.e. u is not too generous
    Rational v = u - Rational(1, 32768);
    if (v.sign() > 0) CHECK(v * v < x);
  }
}

TEST_CASE("atanh series bounds") {
  Enclosure a = atanh_enclosure(Rational(1, 3), kWidth);
  // atanh(1/3) = ln(2)/2
  Enclosure half_ln2 = ln2_enclosure(kWidth).scale(Rational(1, 2));
  CHECK(a.lo() <= half_ln2.hi());
  CHECK(half_ln2.lo() <= a.hi());
  Enclosure neg = atanh_enclosure(Rational(-1, 3), kWidth);
  CHECK(neg.lo() <= -a.lo());
  CHECK(neg.hi() >= -a.hi());
}
