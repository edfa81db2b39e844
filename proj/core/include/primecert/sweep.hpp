#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primecert/ratio_config.hpp"

namespace primecert {

// The step function G(x) = sum floor(a_i x) - sum floor(b_j x), periodic
// with period 1, right-continuous, G(0) = 0. Exact evaluation at a
// rational point.
long g_floor(const RatioConfig& cfg, const Rational& x);

// The same function for a compiled prime-set config, computed from the
// coprime-counting form C((k+1)Qx) - C(kQx) - C(Qx) where C(y) counts
// integers in [1, y] coprime to Q. Independent route used to cross-check
// g_floor.
long g_indicator(std::int64_t k, const PrimeSet& set, const Rational& x);

// Bulk evaluator carrying the precomputed divisor table.
class IndicatorEvaluator {
public:
  IndicatorEvaluator(std::int64_t k, const PrimeSet& set);
  long eval(const Rational& x) const;

private:
  std::int64_t k_;
  std::vector<SignedDivisor> divisors_;
  Integer Q_;
};

// Worst-case |G| bound 2^(#P - 1) for a compiled prime-set config
// (1 for the empty set).
Integer max_abs_bound(const PrimeSet& set);

struct SweepMode {
  bool exhaustive = false;
  std::int64_t D = 0;  // bounded scan limit; events up to x = D / a_1

  static SweepMode Exhaustive() { return {true, 0}; }
  static SweepMode Bounded(std::int64_t D) { return {false, D}; }
};

enum class SweepEngine { automatic, indicator, floor };

struct SweepOptions {
  SweepEngine engine = SweepEngine::automatic;
  int threads = 1;
};

// Result of scanning G over x >= 1/b_1 on the grid x = j / L.
struct SweepReport {
  std::string config_id;
  std::int64_t k = 0;
  bool exhaustive = false;       // whole period covered
  std::int64_t scan_limit_D = 0; // events considered up to x = D / a_1
  int m_found = 0;               // largest level reached
  std::vector<Rational> crossings;     // c_i = least x >= 1/b_1 with G >= i
  std::vector<std::int64_t> thresholds;  // d_i = a_1 c_i when all integral
  bool thresholds_on_grid = false;
  std::optional<Rational> c_exact;     // sum 1/c_i, only when exhaustive
  std::string engine_used;             // "indicator" or "floor"
};

// Scans G from x = 1/b_1 upward on the exact grid j / L, recording the
// first crossing of each positive level. Exhaustive mode covers one full
// period (which is enough: G has period 1); bounded mode covers events
// up to x = D / a_1 and upgrades itself to exhaustive when that range
// spans a period. Deterministic for any thread count.
SweepReport sweep(const RatioConfig& cfg, SweepMode mode, const SweepOptions& opt = {});

}  // namespace primecert
