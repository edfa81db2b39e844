#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primecert/rational.hpp"

namespace primecert {

// All primes <= limit, ascending. Segmented sieve of Eratosthenes; the
// limit is capped (budget_error) well before memory becomes a concern.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit);

// Deterministic trial-division primality test for n up to 64 bits.
bool is_prime_u64(std::uint64_t n);

// Prime table with counting queries.
class Sieve {
public:
  explicit Sieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  // pi(x) = #{p prime : p <= x}; x may exceed limit only by 0.
  std::uint64_t pi(std::uint64_t x) const;

  // #{p prime : lo < p <= hi}.
  std::uint64_t count_in(std::uint64_t lo, std::uint64_t hi) const;

  bool contains(std::uint64_t n) const;

private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
};

// Number of primes in (k*a*n, (k+1)*a*n]. The sieve must cover
// (k+1)*a*n, otherwise std::invalid_argument.
std::uint64_t interval_prime_count(std::uint64_t k, std::uint64_t a, std::uint64_t n,
                                   const Sieve& sieve);

// Exponent of the prime p in n! by the floor-sum formula. Requires p >= 2.
std::uint64_t legendre_nu(std::uint64_t p, std::uint64_t n);

// Multiplicative structure of a squarefree modulus.
struct SignedDivisor {
  Integer m;
  int mu;  // Moebius value, +1 or -1
};

struct PrimeSet {
  std::vector<std::uint64_t> primes;  // strictly ascending, each verified prime
  Integer Q;                          // product
  Integer phi;                        // totient of Q
};

// Validates primality and strict ascending order.
PrimeSet make_prime_set(const std::vector<std::uint64_t>& primes);

// The 2^|P| squarefree divisors of prod(P) with Moebius signs, ascending
// by divisor. Sets with more than max_size primes raise budget_error.
std::vector<SignedDivisor> squarefree_divisors(const PrimeSet& set, std::size_t max_size = 16);

}  // namespace primecert
