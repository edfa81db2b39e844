#include "primecert/lemma_checks.hpp"

#include "primecert/errors.hpp"
#include "primecert/primes.hpp"

namespace primecert {

namespace {

const Rational kTermWidth(Integer(1), pow2(60));

Integer ipow(const Integer& base, std::uint64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), (unsigned long)e);
  return r;
}

}  // namespace

PiBoundReport check_pi_bound(std::uint64_t x_max) {
  if (x_max < 36) throw std::invalid_argument("check_pi_bound: x_max must be >= 36");
  PiBoundReport rep;
  rep.x_max = x_max;
  Sieve sieve(x_max);
  const auto& P = sieve.primes();
  std::size_t idx = 0;
  std::uint64_t count = 0;
  for (std::uint64_t x = 2; x <= x_max; ++x) {
    if (idx < P.size() && P[idx] == x) {
      ++count;
      ++idx;
    }
    if (x >= 36 && 3 * count > x) {
      rep.first_violation = x;
      rep.ok = false;
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

PrimorialBoundReport check_primorial_bound(std::uint64_t x_max, const Rational& C,
                                           const Rational& beta) {
  if (x_max < 2) throw std::invalid_argument("check_primorial_bound: x_max must be >= 2");
  if (C.sign() <= 0) throw std::invalid_argument("check_primorial_bound: C must be positive");
  if (beta <= Rational(1)) throw std::invalid_argument("check_primorial_bound: beta must be > 1");

  PrimorialBoundReport rep;
  rep.C = C;
  rep.beta = beta;
  rep.x_max = x_max;

  const std::uint64_t exact_cap = std::min<std::uint64_t>(x_max, 10000);
  rep.exact_cross_checked_to = exact_cap;

  // ln C and ln beta are reused scaled by p up to x_max; keep them tight
  // enough that the scaled width stays negligible.
  const Rational w_const(Integer(1), pow2(80));
  Enclosure lnC = ln_enclosure(C, w_const);
  Enclosure lnB = ln_enclosure(beta, w_const);

  Sieve sieve(x_max);
  Enclosure lnTheta{Rational(0)};

  // exact product state, advanced only while p <= exact_cap
  Integer theta = 1;
  Integer Cn = C.num(), Cd = C.den(), Bn = beta.num(), Bd = beta.den();
  Integer bn_pow = 1, bd_pow = 1;  // Bn^p, Bd^p at the current prime
  std::uint64_t pow_at = 0;

  std::uint64_t next_cp = 2;  // checkpoints at powers of two
  auto flush_checkpoints = [&](std::uint64_t upto) {
    while (next_cp <= upto) {
      Enclosure margin = Enclosure(Rational((unsigned long long)next_cp)).mul(lnB) +
                         lnC - lnTheta;
      rep.checkpoints.push_back({next_cp, margin.lo().to_decimal(6, round_dir::down)});
      if (next_cp > x_max / 2) {
        next_cp = x_max + 1;
        break;
      }
      next_cp *= 2;
    }
  };

  for (std::uint64_t p : sieve.primes()) {
    flush_checkpoints(p - 1);  // theta is still theta(p-1) here
    lnTheta += ln_enclosure(Rational((unsigned long long)p), kTermWidth);
    bool fail = false;
    if (p <= exact_cap) {
      theta *= Integer(std::to_string(p));
      bn_pow *= ipow(Bn, p - pow_at);
      bd_pow *= ipow(Bd, p - pow_at);
      pow_at = p;
      // theta <= C beta^p  <=>  theta * Cd * Bd^p <= Cn * Bn^p
      fail = theta * Cd * bd_pow > Cn * bn_pow;
    } else {
      Enclosure rhs = Enclosure(Rational((unsigned long long)p)).mul(lnB) + lnC;
      fail = !(lnTheta.hi() <= rhs.lo());
    }
    if (fail) {
      rep.first_violation = p;
      rep.ok = false;
      return rep;
    }
  }
  flush_checkpoints(x_max);
  rep.ok = true;
  return rep;
}

StirlingReport check_stirling(std::uint64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("check_stirling: n_max must be >= 1");
  StirlingReport rep;
  rep.n_max = n_max;
  // n = 1: all three quantities are exactly 1, an equality on both sides.
  rep.equality_only_at_one = true;

  Enclosure lnFact{Rational(0)};
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    Enclosure lnN = ln_enclosure(Rational((unsigned long long)n), kTermWidth);
    lnFact += lnN;
    Rational shift = Rational(1) - Rational((unsigned long long)n);
    // strict: n ln n + (1-n) < ln n!  and  ln n! < (n+1) ln n + (1-n)
    Enclosure lower = lnN.scale(Rational((unsigned long long)n)) + Enclosure(shift);
    Enclosure upper = lnN.scale(Rational((unsigned long long)n + 1)) + Enclosure(shift);
    if (!(lower.hi() < lnFact.lo()) || !(lnFact.hi() < upper.lo())) {
      rep.first_violation = n;
      rep.ok = false;
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

LegendreReport check_legendre(std::uint64_t n_max, std::uint64_t p_max) {
  LegendreReport rep;
  rep.n_max = n_max;
  rep.p_max = p_max;
  Sieve sieve(p_max);
  for (std::uint64_t p : sieve.primes()) {
    std::uint64_t acc = 0;  // valuation of n! accumulated term by term
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      std::uint64_t m = n;
      while (m % p == 0) {
        ++acc;
        m /= p;
      }
      if (acc != legendre_nu(p, n)) {
        rep.mismatch_p = p;
        rep.mismatch_n = n;
        rep.ok = false;
        return rep;
      }
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace primecert
