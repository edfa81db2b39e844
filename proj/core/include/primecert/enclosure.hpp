#pragma once

#include <string>

#include "primecert/rational.hpp"

namespace primecert {

// Closed interval [lo, hi] with exact rational endpoints. The invariant
// throughout the library: every Enclosure produced for a real quantity
// provably contains it. Interval arithmetic here is exact; width is only
// introduced by the logarithm series truncation and explicit outward
// dyadic rounding.
class Enclosure {
public:
  Enclosure() : lo_(0), hi_(0) {}
  explicit Enclosure(const Rational& point) : lo_(point), hi_(point) {}
  Enclosure(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (lo_ > hi_) throw std::invalid_argument("Enclosure: lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / Rational(2); }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool intersects(const Enclosure& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool strictly_above(const Enclosure& o) const { return lo_ > o.hi_; }
  bool strictly_below(const Enclosure& o) const { return hi_ < o.lo_; }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }
  Enclosure& operator+=(const Enclosure& o) {
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
  }
  Enclosure& operator-=(const Enclosure& o) { return *this += -o; }
  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  // Multiply by an exact rational; endpoints swap when r < 0.
  Enclosure scale(const Rational& r) const {
    return r.sign() >= 0 ? Enclosure(lo_ * r, hi_ * r) : Enclosure(hi_ * r, lo_ * r);
  }

  Enclosure mul(const Enclosure& o) const;

  // Requires o.lo > 0.
  Enclosure div(const Enclosure& o) const;

  // Widen endpoints outward onto the grid of multiples of 2^-bits.
  Enclosure round_outward(unsigned bits) const {
    return Enclosure(lo_.dyadic_floor(bits), hi_.dyadic_ceil(bits));
  }

  // Directed decimal endpoints: lo rounded down, hi rounded up, so the
  // printed interval still contains the true value.
  std::string decimal_lo(unsigned places) const { return lo_.to_decimal(places, round_dir::down); }
  std::string decimal_hi(unsigned places) const { return hi_.to_decimal(places, round_dir::up); }

private:
  Rational lo_, hi_;
};

// Enclosure of ln(q) for rational q > 0, with width() <= width_target.
// Deterministic: the same (q, width_target) always yields the same
// endpoints, and a smaller width_target yields an enclosure contained
// in the larger one. Throws std::domain_error for q <= 0,
// std::invalid_argument for width_target <= 0, budget_error if the
// series cap is hit.
Enclosure ln_enclosure(const Rational& q, const Rational& width_target);

// Cached enclosure of ln 2 (same determinism and nesting guarantees).
Enclosure ln2_enclosure(const Rational& width_target);

// Enclosure of atanh(r) for |r| <= 1/2, used by ln_enclosure and exposed
// for tests. Exact partial sum plus a sign-aware remainder bound.
Enclosure atanh_enclosure(const Rational& r, const Rational& width_target);

// Rational u with sqrt(x) <= u <= sqrt(x) + 2^-15, for x >= 0. Used to
// over-approximate square-root error terms.
Rational sqrt_upper(const Rational& x);

}  // namespace primecert
