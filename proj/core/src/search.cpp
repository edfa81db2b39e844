#include "primecert/search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "primecert/errors.hpp"
#include "primecert/ratio_config.hpp"

namespace primecert {

namespace {

std::vector<std::uint64_t> distinct_prime_factors(std::int64_t v) {
  std::vector<std::uint64_t> out;
  if (v < 2) return out;
  std::uint64_t n = static_cast<std::uint64_t>(v);
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> sorted_union(const std::vector<std::uint64_t>& primes,
                                        std::uint64_t q) {
  std::vector<std::uint64_t> out = primes;
  out.insert(std::upper_bound(out.begin(), out.end(), q), q);
  return out;
}

// First threshold of a bounded probe sweep on P u {q}; trial_D + 1 when
// the probe window has no crossing at all (the best possible outcome).
std::int64_t probe_score(std::int64_t k, const std::vector<std::uint64_t>& primes,
                         std::uint64_t q, const SearchBudget& budget) {
  PrimeSet set = make_prime_set(sorted_union(primes, q));
  RatioConfig cfg = compile_prime_set(k, set);
  SweepOptions opt;
  opt.threads = budget.threads;
  SweepReport rep = sweep(cfg, SweepMode::Bounded(budget.trial_D), opt);
  if (rep.thresholds.empty()) return budget.trial_D + 1;
  return rep.thresholds.front();
}

struct SearchState {
  std::int64_t k;
  SearchBudget budget;
  SearchResult result;
  int nodes_used = 0;
};

bool dfs(SearchState& st, const std::vector<std::uint64_t>& primes, int depth) {
  if (st.nodes_used >= st.budget.max_nodes) {
    st.result.budget_exhausted = true;
    return false;
  }
  ++st.nodes_used;

  CertifyOptions copt;
  copt.C = st.budget.C;
  copt.beta = st.budget.beta;
  copt.initial_D = std::min<std::int64_t>(1000000, st.budget.max_D);
  copt.max_D = st.budget.max_D;
  copt.slot_budget = st.budget.slot_budget;
  copt.threads = st.budget.threads;

  PrimeSet set = make_prime_set(primes);
  CertifyResult cr = certify(st.k, set, copt);

  st.result.nodes.push_back({depth, primes, cr.cert.verdict,
                             cr.cert.thresholds.empty() ? 0 : cr.cert.thresholds.front(),
                             cr.cert.scan_limit_D, cr.cert.exhaustive,
                             {}});
  std::size_t node_idx = st.result.nodes.size() - 1;

  if (cr.cert.verdict == "holds") {
    st.result.success = true;
    st.result.primes = primes;
    st.result.winner = std::move(cr);
    return true;
  }
  if (depth >= st.budget.max_depth) return false;
  if (static_cast<int>(primes.size()) >= st.budget.max_primes) return false;

  std::vector<std::uint64_t> cands =
      augment_candidates(st.k, primes, cr.cert.thresholds, st.budget);
  st.result.nodes[node_idx].candidates = cands;

  for (std::uint64_t q : cands) {
    if (dfs(st, sorted_union(primes, q), depth + 1)) return true;
    if (st.result.budget_exhausted) return false;
  }
  return false;
}

}  // namespace

std::vector<std::uint64_t> augment_candidates(std::int64_t k,
                                              const std::vector<std::uint64_t>& primes,
                                              const std::vector<std::int64_t>& thresholds,
                                              const SearchBudget& budget) {
  std::set<std::uint64_t> member(primes.begin(), primes.end());
  std::set<std::uint64_t> fresh;
  for (std::int64_t d : thresholds) {
    for (std::uint64_t p : distinct_prime_factors(d)) {
      if (!member.count(p)) fresh.insert(p);
    }
  }
  // score each candidate, then order best-first (ties: smaller prime)
  std::vector<std::pair<std::int64_t, std::uint64_t>> scored;
  for (std::uint64_t q : fresh) {
    scored.emplace_back(probe_score(k, primes, q, budget), q);
  }
  std::sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<std::uint64_t> out;
  out.reserve(scored.size());
  for (const auto& [s, q] : scored) out.push_back(q);
  return out;
}

SearchResult search_config(std::int64_t k, const std::vector<std::uint64_t>& seed,
                           const SearchBudget& budget) {
  if (budget.max_depth < 0 || budget.max_nodes < 1) {
    throw budget_error("search budget admits no work");
  }
  SearchState st{k, budget, {}, 0};
  dfs(st, seed, 0);
  if (st.result.success) return std::move(st.result);
  st.result.primes = seed;
  return std::move(st.result);
}

}  // namespace primecert
