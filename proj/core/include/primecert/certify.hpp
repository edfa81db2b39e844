#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primecert/sweep.hpp"

namespace primecert {

// A self-contained, re-checkable record that the primorial-ratio
// condition for (k, P) was established (or could not be decided within
// the scanned range). Numeric fields that can exceed 64 bits are carried
// as decimal strings in the JSON form; enclosure endpoints are stored as
// outward-rounded 6-place decimals.
struct Certificate {
  int version = 1;
  std::int64_t k = 0;
  std::vector<std::uint64_t> primes;
  Integer Q, phiQ;
  Rational C, beta;
  std::int64_t scan_limit_D = 0;
  bool exhaustive = false;
  std::vector<std::int64_t> thresholds;
  int m_found = 0;
  Integer m_cap;
  Rational c_upper;
  std::string lhs_lo, lhs_hi, rhs_lo, rhs_hi;
  std::string verdict;  // "holds" | "condition-false" | "undecided"
  std::string generator;
};

struct ConditionResult {
  Enclosure lhs, rhs;
  Rational c_upper;
  std::string verdict;
};

struct EvalOptions {
  Rational start_width = Rational(1, 10000);
  bool direct_weight = false;  // recompute the weight from the entry lists
                               // instead of the totient closed form
};

// Decides the condition  weight > c_upper * ln(beta)  for a compiled
// prime-set config against a sweep report, escalating enclosure widths
// until the comparison is strict (display-proof at 6 decimals). An exact
// equality between the two sides is detected by prime-exponent
// comparison, not by narrowing enclosures forever. Bounded reports can
// only yield "holds" or "undecided": their c_upper is an overestimate,
// so a failed comparison is not evidence the condition is false.
ConditionResult evaluate_condition(const RatioConfig& cfg, const SweepReport& report,
                                   const Rational& C, const Rational& beta,
                                   const EvalOptions& opt = {});

struct CertifyOptions {
  Rational C = Rational(1, 8);
  Rational beta = Rational(4);
  enum class Mode { automatic, exhaustive, bounded } mode = Mode::automatic;
  std::int64_t initial_D = 1000000;
  std::int64_t max_D = 100000000;
  std::int64_t slot_budget = 1000000000;  // automatic: exhaustive iff grid fits
  int threads = 1;
};

struct CertifyResult {
  Certificate cert;
  SweepReport report;
  ConditionResult condition;
};

// Sweeps (k, P) and evaluates the condition, extending a bounded scan by
// doubling D until the verdict is decided or max_D is reached. An
// undecided outcome still produces a valid certificate.
CertifyResult certify(std::int64_t k, const PrimeSet& set, const CertifyOptions& opt = {});

struct VerifyOutcome {
  bool accepted = false;
  std::string reason;  // first failing field when rejected
};

// Recomputes everything a certificate claims, using the floor engine
// (the generator uses the indicator engine) and the entry-list weight
// (the generator uses the totient closed form), at tighter widths, and
// checks the recomputed enclosures sit inside the stored ones.
VerifyOutcome verify_certificate(const Certificate& cert, int threads = 1);

// Largest lower bound this config certifies for the number of primes in
// (k * a_scale * n, (k+1) * a_scale * n], valid for n at or above
// validity_floor(cfg). Needs an exhaustive report, or a prime-set config
// (whose tail levels are capped by 2^(#P-1)).
Rational nk_lower_bound(const RatioConfig& cfg, const SweepReport& report, const Rational& C,
                        const Rational& beta, const Integer& n);

// Smallest n for which the analytic lower bound argument applies:
// sqrt(a_1 n) must reach 36 (for the pi bound) and b_1 n must reach
// sqrt(a_1 n) (so the prime ranges are ordered). Below it no bound is
// claimed at all.
Integer validity_floor(const RatioConfig& cfg);

struct ThresholdResult {
  Integer n0;           // least n with bound >= N for every n >= n0
  Integer n_star;       // dominance point: bound grows linearly past it
  Integer floor_n;      // validity floor of the config
};

// Least n0 such that nk_lower_bound >= N for every valid n >= n0.
// Requires the condition margin to be positive (weight > c * ln beta),
// otherwise std::domain_error.
ThresholdResult effective_threshold(const RatioConfig& cfg, const SweepReport& report,
                                    const Rational& C, const Rational& beta, const Integer& N);

}  // namespace primecert
