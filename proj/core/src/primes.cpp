#include "primecert/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "primecert/errors.hpp"

namespace primecert {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t r = (std::uint64_t)std::max(0.0, std::sqrt((double)n));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n && (r + 1) != 0) ++r;
  return r;
}

}  // namespace

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  constexpr std::uint64_t kCap = 1ull << 34;
  if (limit > kCap) throw budget_error("sieve_primes: limit above cap 2^34");
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;

  // base sieve over odd numbers up to sqrt(limit)
  std::uint64_t root = isqrt_u64(limit);
  std::vector<std::uint8_t> base((root >> 1) + 1, 1);  // base[i] <-> 2i+1
  base[0] = 0;                                         // 1 is not prime
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= root; ++i) {
    if (!base[i]) continue;
    std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) >> 1; j < base.size(); j += p) base[j] = 0;
  }
  std::vector<std::uint64_t> small;
  for (std::uint64_t i = 1; 2 * i + 1 <= root; ++i)
    if (base[i]) small.push_back(2 * i + 1);

  // segmented sieve over odd numbers
  constexpr std::uint64_t kSeg = 1u << 20;  // odds per segment
  std::vector<std::uint8_t> seg(kSeg);
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSeg) {
    std::uint64_t hi = std::min(limit, lo + 2 * kSeg - 2);  // odd range [lo, hi]
    std::uint64_t n = (hi - lo) / 2 + 1;
    std::memset(seg.data(), 1, n);
    for (std::uint64_t p : small) {
      std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
      if (start % 2 == 0) start += p;
      if (start > hi) continue;
      for (std::uint64_t v = (start - lo) / 2; v < n; v += p) seg[v] = 0;
    }
    for (std::uint64_t i = 0; i < n; ++i)
      if (seg[i]) primes.push_back(lo + 2 * i);
  }
  return primes;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0) return false;
    if (n % (d + 2) == 0) return false;
  }
  return true;
}

Sieve::Sieve(std::uint64_t limit) : limit_(limit), primes_(sieve_primes(limit)) {}

std::uint64_t Sieve::pi(std::uint64_t x) const {
  if (x > limit_) throw std::invalid_argument("Sieve::pi: x exceeds sieve limit");
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return (std::uint64_t)(it - primes_.begin());
}

std::uint64_t Sieve::count_in(std::uint64_t lo, std::uint64_t hi) const {
  if (hi < lo) return 0;
  return pi(hi) - pi(lo);
}

bool Sieve::contains(std::uint64_t n) const {
  return std::binary_search(primes_.begin(), primes_.end(), n);
}

std::uint64_t interval_prime_count(std::uint64_t k, std::uint64_t a, std::uint64_t n,
                                   const Sieve& sieve) {
  if (k < 1 || a < 1 || n < 1) throw std::invalid_argument("interval_prime_count: k, a, n >= 1");
  unsigned __int128 hi = (unsigned __int128)(k + 1) * a * n;
  if (hi > sieve.limit())
    throw std::invalid_argument("interval_prime_count: (k+1)*a*n exceeds sieve limit");
  return sieve.count_in(k * a * n, (std::uint64_t)hi);
}

std::uint64_t legendre_nu(std::uint64_t p, std::uint64_t n) {
  if (p < 2) throw std::domain_error("legendre_nu: p must be >= 2");
  std::uint64_t sum = 0, q = n / p;
  while (q > 0) {
    sum += q;
    q /= p;
  }
  return sum;
}

PrimeSet make_prime_set(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("make_prime_set: empty prime list");
  PrimeSet s;
  s.Q = 1;
  s.phi = 1;
  std::uint64_t prev = 0;
  for (std::uint64_t p : primes) {
    if (p <= prev)
      throw std::invalid_argument("make_prime_set: primes must be strictly ascending");
    if (!is_prime_u64(p))
      throw std::invalid_argument("make_prime_set: " + std::to_string(p) + " is not prime");
    prev = p;
    s.Q *= Integer(std::to_string(p));
    s.phi *= Integer(std::to_string(p - 1));
  }
  s.primes = primes;
  return s;
}

std::vector<SignedDivisor> squarefree_divisors(const PrimeSet& set, std::size_t max_size) {
  if (set.primes.size() > max_size)
    throw budget_error("squarefree_divisors: prime set exceeds enumeration cap");
  std::vector<SignedDivisor> out;
  out.push_back({Integer(1), 1});
  for (std::uint64_t p : set.primes) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      out.push_back({out[i].m * Integer(std::to_string(p)), -out[i].mu});
  }
  std::sort(out.begin(), out.end(),
            [](const SignedDivisor& a, const SignedDivisor& b) { return a.m < b.m; });
  return out;
}

}  // namespace primecert
