#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primecert/enclosure.hpp"
#include "primecert/primes.hpp"

namespace primecert {

// A factorial-ratio configuration: the ratio prod (a_i n)! / prod (b_i n)!
// together with the interval parameter k it targets. Lists are kept
// cancelled (no entry appears on both sides), descending, and validated:
//   a[0] = (k+1) * a_scale,  b[0] = k * a_scale,  every other entry <= b[0],
//   sum a = sum b.
struct RatioConfig {
  std::int64_t k = 0;
  Integer a_scale;             // common scale of the entries (Q for compiled sets)
  std::vector<Integer> a, b;   // descending, cancelled
  Integer L;                   // lcm of all entries; the sweep grid denominator
  std::optional<PrimeSet> prime_set;  // present for compiled configurations
  std::string config_id;       // fnv1a-64 digest of the canonical form

  std::size_t s() const { return a.size(); }
  std::size_t t() const { return b.size(); }
  const Integer& a1() const { return a.front(); }
  const Integer& b1() const { return b.front(); }
};

// Builds a validated config from raw lists (cancelling shared entries).
// Throws std::invalid_argument naming the violated rule.
RatioConfig make_config(std::int64_t k, const Integer& a_scale, std::vector<Integer> a,
                        std::vector<Integer> b,
                        std::optional<PrimeSet> prime_set = std::nullopt);

// The Moebius-weighted configuration attached to a set of primes P:
// divisors m of prod(P) contribute ((k+1)Qn/m)! / ((kQn/m)! (Qn/m)!) with
// sign mu(m). After cancellation this is a plain two-list config.
RatioConfig compile_prime_set(std::int64_t k, const PrimeSet& set);

// Named example configurations.
RatioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Logarithmic weight of the ratio at n = 1 per unit n:
//   Lambda = sum a_i ln a_i - sum b_j ln b_j.
Enclosure weight_direct(const RatioConfig& cfg, const Rational& width_target);

// Same quantity for a compiled prime-set config via the closed form
//   phi(Q) ((k+1) ln(k+1) - k ln k).
Enclosure weight_closed_form(std::int64_t k, const PrimeSet& set, const Rational& width_target);

}  // namespace primecert
