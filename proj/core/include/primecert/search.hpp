#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "primecert/certify.hpp"

namespace primecert {

// Knobs for the augmentation search. Scoring probes are bounded sweeps
// at trial_D; full node evaluations run certify() capped at max_D scan
// range and max_nodes total evaluations.
struct SearchBudget {
  int max_primes = 16;
  int max_depth = 2;
  std::int64_t trial_D = 100000;
  std::int64_t max_D = 4000000;
  std::int64_t slot_budget = 1000000000;
  int max_nodes = 64;
  Rational C = Rational(1, 8);
  Rational beta = Rational(4);
  int threads = 1;
};

// One evaluated prime set, in evaluation order.
struct SearchNode {
  int depth = 0;
  std::vector<std::uint64_t> primes;
  std::string verdict;
  std::int64_t d_first = 0;  // 0 when the sweep found no thresholds
  std::int64_t scan_limit_D = 0;
  bool exhaustive = false;
  std::vector<std::uint64_t> candidates;  // augmentations queued at this node
};

struct SearchResult {
  bool success = false;
  std::vector<std::uint64_t> primes;  // the accepted set when success
  std::optional<CertifyResult> winner;
  std::vector<SearchNode> nodes;
  bool budget_exhausted = false;
};

// New primes dividing any reported threshold, candidates for enlarging P.
// Ordered by the quality of a bounded probe sweep on the enlarged set:
// larger first threshold first (no threshold below trial_D beats any
// finite one), ties by smaller prime.
std::vector<std::uint64_t> augment_candidates(std::int64_t k,
                                              const std::vector<std::uint64_t>& primes,
                                              const std::vector<std::int64_t>& thresholds,
                                              const SearchBudget& budget);

// Depth-first augmentation search from a seed prime set. Each node is
// certified; a "holds" verdict wins immediately. Otherwise the node's
// thresholds are factored and each candidate enlargement is tried in
// score order until the depth or node budget runs out.
SearchResult search_config(std::int64_t k, const std::vector<std::uint64_t>& seed,
                           const SearchBudget& budget = {});

}  // namespace primecert
