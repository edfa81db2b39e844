#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primecert/certify.hpp"

namespace primecert {

// Reference values from the literature for specific (k, P) cases, used
// only to warn when a computed quantity disagrees with a published one.
// Computed values always win; the warning records both.
struct ReferenceCase {
  std::int64_t k;
  std::vector<std::uint64_t> primes;
  std::optional<std::int64_t> d_first;       // published first threshold
  std::optional<std::int64_t> d_last;        // published last threshold
  std::optional<int> m;                      // published level count
  std::optional<std::string> lhs_3dp;        // published 3-decimal displays
  std::optional<std::string> rhs_3dp;
  std::optional<Integer> tail_cap;           // published worst-case level cap
};

struct Discrepancy {
  std::string field;
  std::string computed;
  std::string published;
};

const std::vector<ReferenceCase>& reference_cases();

// Compare a certify result against the reference table (no-op for cases
// not in it). Display comparison uses round-to-nearest at 3 decimals.
std::vector<Discrepancy> compare_to_reference(const Certificate& cert,
                                              const ConditionResult& cond);

}  // namespace primecert
