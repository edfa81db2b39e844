#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primecert/enclosure.hpp"

namespace primecert {

// Machine checks of the analytic inequalities the certification argument
// leans on, over explicit finite ranges. Each returns a report rather
// than a bool so callers can surface where a check failed and with what
// margin. Enclosure comparisons are used throughout; points where an
// inequality is an exact equality are settled by exact integer
// arithmetic instead, so no check can pass or fail by rounding luck.

struct PiBoundReport {
  std::uint64_t x_max = 0;
  bool ok = false;
  std::optional<std::uint64_t> first_violation;
};

// Checks 3*pi(x) <= x for every integer x in [36, x_max]. x_max < 36 is
// an invalid_argument.
PiBoundReport check_pi_bound(std::uint64_t x_max);

struct PrimorialCheckpoint {
  std::uint64_t x = 0;
  std::string margin_lo;  // decimal lower bound of ln(C) + x ln(beta) - ln(theta(x))
};

struct PrimorialBoundReport {
  Rational C, beta;
  std::uint64_t x_max = 0;
  bool ok = false;
  std::optional<std::uint64_t> first_violation;
  std::uint64_t exact_cross_checked_to = 0;
  std::vector<PrimorialCheckpoint> checkpoints;  // at powers of two
};

// Checks theta(x) = prod_{p <= x} p <= C * beta^x for every prime x <= x_max
// (which suffices for all real x >= 2 when it holds at primes and at x = 2).
// Below 10^4 the product is also cross-checked by exact big-integer
// comparison, which is what settles the equality point of (C, beta) = (1/8, 4)
// at x = 2. Requires x_max >= 2, C > 0, beta > 1.
PrimorialBoundReport check_primorial_bound(std::uint64_t x_max, const Rational& C,
                                           const Rational& beta);

struct StirlingReport {
  std::uint64_t n_max = 0;
  bool ok = false;
  bool equality_only_at_one = false;  // both bounds are equalities exactly at n = 1
  std::optional<std::uint64_t> first_violation;
};

// Checks n^n e^(1-n) <= n! <= n^(n+1) e^(1-n) for n in [1, n_max], strictly
// on both sides for n >= 2, with exact equality at n = 1.
StirlingReport check_stirling(std::uint64_t n_max);

struct LegendreReport {
  std::uint64_t n_max = 0, p_max = 0;
  bool ok = false;
  std::optional<std::uint64_t> mismatch_p, mismatch_n;
};

// Cross-checks legendre_nu against direct valuation accumulation of n!
// for all primes p <= p_max and all n <= n_max.
LegendreReport check_legendre(std::uint64_t n_max, std::uint64_t p_max);

}  // namespace primecert
