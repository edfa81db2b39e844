#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primecert {

using Integer = mpz_class;

enum class round_dir { down, up, nearest };

// Exact rational, always canonical (gcd 1, positive denominator).
// Thin wrapper over mpq_class so every operation stays exact; nothing
// here ever rounds except the explicit to_decimal / dyadic helpers.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_((long int)n) {}
  Rational(long long n) : v_(Integer(std::to_string(n))) {}
  Rational(unsigned int n) : v_((unsigned long)n) {}
  Rational(unsigned long n) : v_(n) {}
  Rational(unsigned long long n) : v_(Integer(std::to_string(n))) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long long num, long long den)
      : Rational(Integer(std::to_string(num)), Integer(std::to_string(den))) {}

  static Rational from_string(const std::string& s);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return sgn(v_); }

  Integer floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  Integer ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  Rational frac() const { return *this - Rational(floor()); }

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // e may be negative; 0^0 = 1, 0^-e is a domain error.
  Rational pow_int(long e) const;

  // Largest multiple of 2^-bits that is <= value (resp. smallest >=).
  Rational dyadic_floor(unsigned bits) const;
  Rational dyadic_ceil(unsigned bits) const;

  // "n/d", or just "n" when integral.
  std::string to_string() const;

  // Fixed-point decimal with exactly `places` fractional digits,
  // rounded in the requested direction (nearest = half away from zero).
  std::string to_decimal(unsigned places, round_dir dir) const;

  // Approximation for sizing heuristics only; never used in proofs.
  double to_double_approx() const { return v_.get_d(); }

private:
  mpq_class v_;
};

inline Rational Rational::from_string(const std::string& s) {
  auto bad = [&]() { return std::invalid_argument("Rational: cannot parse '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos && dot != std::string::npos) throw bad();
  try {
    if (slash != std::string::npos) {
      Integer n(s.substr(0, slash), 10), d(s.substr(slash + 1), 10);
      return Rational(n, d);
    }
    if (dot != std::string::npos) {
      std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
      if (tail.empty()) throw bad();
      for (char c : tail)
        if (c < '0' || c > '9') throw bad();
      bool neg = !head.empty() && head[0] == '-';
      Integer ip(head.empty() || head == "-" ? std::string("0") : head, 10);
      Integer scale = 1;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
      Integer fp(tail, 10);
      Integer n = ip * scale + (neg ? -fp : fp);
      return Rational(n, scale);
    }
    return Rational(Integer(s, 10));
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

inline Rational Rational::pow_int(long e) const {
  if (e == 0) return Rational(1);
  bool inv = e < 0;
  unsigned long ue = inv ? (unsigned long)(-(e + 1)) + 1ul : (unsigned long)e;
  if (inv && is_zero()) throw std::domain_error("Rational: 0 to a negative power");
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), ue);
  return inv ? Rational(d, n) : Rational(n, d);
}

inline Rational Rational::dyadic_floor(unsigned bits) const {
  Integer n;
  mpz_mul_2exp(n.get_mpz_t(), num().get_mpz_t(), bits);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), den().get_mpz_t());
  Integer d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
  return Rational(q, d);
}

inline Rational Rational::dyadic_ceil(unsigned bits) const {
  Integer n;
  mpz_mul_2exp(n.get_mpz_t(), num().get_mpz_t(), bits);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), den().get_mpz_t());
  Integer d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), bits);
  return Rational(q, d);
}

inline std::string Rational::to_string() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

inline std::string Rational::to_decimal(unsigned places, round_dir dir) const {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  Integer sn = num() * scale;
  Integer q;
  switch (dir) {
    case round_dir::down:
      mpz_fdiv_q(q.get_mpz_t(), sn.get_mpz_t(), den().get_mpz_t());
      break;
    case round_dir::up:
      mpz_cdiv_q(q.get_mpz_t(), sn.get_mpz_t(), den().get_mpz_t());
      break;
    case round_dir::nearest: {
      // round-half-away-from-zero on |value|, sign restored after
      Integer an = ::abs(sn), d = den();
      Integer r;
      mpz_fdiv_q(r.get_mpz_t(), Integer(2 * an + d).get_mpz_t(), Integer(2 * d).get_mpz_t());
      q = sgn(sn) < 0 ? Integer(-r) : r;
      break;
    }
  }
  bool neg = sgn(q) < 0;
  std::string digits = Integer(::abs(q)).get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = neg ? "-" : "";
  if (places == 0) return out + digits;
  out += digits.substr(0, digits.size() - places);
  out += ".";
  out += digits.substr(digits.size() - places);
  return out;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer pow10(unsigned e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

inline Integer pow2(unsigned e) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return p;
}

}  // namespace primecert
