#include "primecert/enclosure.hpp"

#include <map>
#include <mutex>

#include "primecert/errors.hpp"

namespace primecert {

Enclosure Enclosure::mul(const Enclosure& o) const {
  Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
  Rational lo = a, hi = a;
  for (const Rational* p : {&b, &c, &d}) {
    if (*p < lo) lo = *p;
    if (*p > hi) hi = *p;
  }
  return Enclosure(lo, hi);
}

Enclosure Enclosure::div(const Enclosure& o) const {
  if (o.lo_.sign() <= 0)
    throw std::domain_error("Enclosure::div: divisor not strictly positive");
  Rational a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
  Rational lo = a, hi = a;
  for (const Rational* p : {&b, &c, &d}) {
    if (*p < lo) lo = *p;
    if (*p > hi) hi = *p;
  }
  return Enclosure(lo, hi);
}

Enclosure atanh_enclosure(const Rational& r, const Rational& width_target) {
  if (width_target.sign() <= 0)
    throw std::invalid_argument("atanh_enclosure: width_target must be positive");
  if (r.abs() > Rational(1, 2))
    throw std::domain_error("atanh_enclosure: |r| must be <= 1/2");
  if (r.is_zero()) return Enclosure(Rational(0));

  // atanh(r) = sum r^(2j+1)/(2j+1); after J terms the tail is bounded by
  // |r|^(2J+1) / ((2J+1)(1-r^2)), a geometric majorant. All exact.
  Rational r2 = r * r;
  Rational one_minus_r2 = Rational(1) - r2;
  Rational term = r;  // r^(2j+1)
  Rational sum = 0;
  for (long j = 0;; ++j) {
    sum += term / Rational(2 * j + 1);
    term *= r2;
    Rational rem = term.abs() / (Rational(2 * j + 3) * one_minus_r2);
    if (rem <= width_target) {
      if (r.sign() > 0) return Enclosure(sum, sum + rem);
      return Enclosure(sum - rem, sum);
    }
    if (j > 200000) throw budget_error("atanh_enclosure: series cap exceeded");
  }
}

Enclosure ln2_enclosure(const Rational& width_target) {
  if (width_target.sign() <= 0)
    throw std::invalid_argument("ln2_enclosure: width_target must be positive");
  static std::mutex mu;
  static std::map<Rational, Enclosure> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(width_target);
    if (it != cache.end()) return it->second;
  }
  // ln 2 = 2 atanh(1/3); budget: series half, outward rounding quarter.
  Enclosure at = atanh_enclosure(Rational(1, 3), width_target / Rational(4));
  Enclosure v = at.scale(Rational(2));
  Integer need = (Rational(8) / width_target).ceil();
  unsigned bits = (unsigned)mpz_sizeinbase(need.get_mpz_t(), 2);
  v = v.round_outward(bits);
  if (v.width() > width_target) throw budget_error("ln2_enclosure: width overrun");
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(width_target, v);
  return v;
}

Enclosure ln_enclosure(const Rational& q, const Rational& width_target) {
  if (q.sign() <= 0) throw std::domain_error("ln_enclosure: argument must be positive");
  if (width_target.sign() <= 0)
    throw std::invalid_argument("ln_enclosure: width_target must be positive");
  if (q == Rational(1)) return Enclosure(Rational(0));

  // Reduce q = m * 2^e with m in [2/3, 4/3), so |(m-1)/(m+1)| <= 1/5 and
  // the atanh series converges fast. Start from the bit-length estimate
  // and correct by at most a couple of doubling steps.
  long e = (long)mpz_sizeinbase(q.num().get_mpz_t(), 2) -
           (long)mpz_sizeinbase(q.den().get_mpz_t(), 2);
  Rational m = e >= 0 ? Rational(q.num(), q.den() * pow2((unsigned)e))
                      : Rational(q.num() * pow2((unsigned)(-e)), q.den());
  const Rational lo_edge(2, 3), hi_edge(4, 3);
  while (m >= hi_edge) {
    m /= Rational(2);
    ++e;
  }
  while (m < lo_edge) {
    m *= Rational(2);
    --e;
  }

  // Width budget: a quarter each for the series, the ln 2 multiple, and
  // the final outward rounding.
  Rational quarter = width_target / Rational(4);
  Rational r = (m - Rational(1)) / (m + Rational(1));
  Enclosure result = atanh_enclosure(r, quarter / Rational(2)).scale(Rational(2));
  if (e != 0) {
    Rational ae((long long)(e < 0 ? -e : e));
    result += ln2_enclosure(quarter / ae).scale(Rational((long long)e));
  }
  Integer need = (Rational(8) / width_target).ceil();
  unsigned bits = (unsigned)mpz_sizeinbase(need.get_mpz_t(), 2);
  result = result.round_outward(bits);
  if (result.width() > width_target) throw budget_error("ln_enclosure: width overrun");
  return result;
}

Rational sqrt_upper(const Rational& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt_upper: negative argument");
  if (x.is_zero()) return Rational(0);
  // ceil(sqrt(ceil(x * 4^16))) / 2^16 >= sqrt(x), within 2^-15 of it.
  Integer scaled = (x * Rational(pow2(32))).ceil();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  if (root * root < scaled) root += 1;
  return Rational(root, pow2(16));
}

}  // namespace primecert
