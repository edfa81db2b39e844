#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "primecert/rational.hpp"

using namespace primecert;

TEST_CASE("construction canonicalizes") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(-4, 6) == Rational(-2, 3));
  CHECK(Rational(Integer(4), Integer(-6)) == Rational(-2, 3));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), std::domain_error);
}

TEST_CASE("from_string forms") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-3/4") == Rational(-3, 4));
  CHECK(Rational::from_string("17") == Rational(17));
  CHECK(Rational::from_string("3.4") == Rational(17, 5));
  CHECK(Rational::from_string("-0.25") == Rational(-1, 4));
  CHECK(Rational::from_string("22.092476") == Rational(22092476, 1000000));
  CHECK_THROWS(Rational::from_string(""));
  CHECK_THROWS(Rational::from_string("a/b"));
}

TEST_CASE("ordering and arithmetic") {
  Rational a(1, 3), b(1, 2);
  CHECK(a < b);
  CHECK(a + b == Rational(5, 6));
  CHECK(b - a == Rational(1, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(2, 3));
  CHECK(-a == Rational(-1, 3));
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
  CHECK(Rational(5, 3).sign() == 1);
  CHECK(Rational(-5, 3).sign() == -1);
  CHECK(Rational(0).sign() == 0);
}

TEST_CASE("floor ceil frac") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(6, 3).floor() == 2);
  CHECK(Rational(6, 3).ceil() == 2);
  CHECK(Rational(7, 2).frac() == Rational(1, 2));
  CHECK(Rational(-7, 2).frac() == Rational(1, 2));
  CHECK(Rational(4).frac() == Rational(0));
}

TEST_CASE("pow_int") {
  CHECK(Rational(2, 3).pow_int(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow_int(-2) == Rational(9, 4));
  CHECK(Rational(5).pow_int(0) == Rational(1));
  CHECK(Rational(0).pow_int(0) == Rational(1));
  CHECK_THROWS_AS(Rational(0).pow_int(-1), std::domain_error);
}

TEST_CASE("dyadic rounding brackets the value") {
  Rational x(22, 7);
  for (unsigned bits : {4u, 16u, 53u}) {
    Rational lo = x.dyadic_floor(bits);
    Rational hi = x.dyadic_ceil(bits);
    CHECK(lo <= x);
    CHECK(x <= hi);
    CHECK(hi - lo <= Rational(Integer(1), pow2(bits)));
  }
  Rational neg(-22, 7);
  CHECK(neg.dyadic_floor(8) <= neg);
  CHECK(neg.dyadic_ceil(8) >= neg);
}

TEST_CASE("decimal output directed") {
  Rational x(1, 3);
  CHECK(x.to_decimal(4, round_dir::down) == "0.3333");
  CHECK(x.to_decimal(4, round_dir::up) == "0.3334");
  Rational y(-1, 3);
  CHECK(y.to_decimal(4, round_dir::down) == "-0.3334");
  CHECK(y.to_decimal(4, round_dir::up) == "-0.3333");
  CHECK(Rational(2).to_decimal(3, round_dir::down) == "2.000");
  CHECK(Rational(1, 8).to_decimal(3, round_dir::up) == "0.125");
}

TEST_CASE("decimal output nearest matches the display convention") {
  // ties round away from zero; otherwise to the closer value
  CHECK(Rational(22966514, 1000000).to_decimal(3, round_dir::nearest) == "22.967");
  CHECK(Rational(239413897, 1000000).to_decimal(3, round_dir::nearest) == "239.414");
  CHECK(Rational(22092476, 1000000).to_decimal(3, round_dir::nearest) == "22.092");
  CHECK(Rational(5, 2).to_decimal(0, round_dir::nearest) == "3");
  CHECK(Rational(-5, 2).to_decimal(0, round_dir::nearest) == "-3");
  CHECK(Rational(1, 2).to_decimal(2, round_dir::nearest) == "0.50");
  CHECK(Rational(12345, 10000).to_decimal(3, round_dir::nearest) == "1.235");
}

TEST_CASE("to_string round trips") {
  for (const char* s : {"2/3", "-7/12", "5", "0", "-41"}) {
    CHECK(Rational::from_string(s).to_string() == s);
  }
}

TEST_CASE("helpers") {
  CHECK(pow10(3) == Integer(1000));
  CHECK(pow2(10) == Integer(1024));
  CHECK(gcd(Integer(12), Integer(18)) == Integer(6));
  CHECK(lcm(Integer(4), Integer(6)) == Integer(12));
}
