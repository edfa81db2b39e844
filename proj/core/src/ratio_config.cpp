#include "primecert/ratio_config.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "primecert/errors.hpp"

namespace primecert {

namespace {

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string canonical_form(std::int64_t k, const Integer& a_scale,
                           const std::vector<Integer>& a, const std::vector<Integer>& b,
                           const std::optional<PrimeSet>& ps) {
  std::string s = "k=" + std::to_string(k) + ";q=" + a_scale.get_str() + ";a=";
  for (const Integer& v : a) s += v.get_str() + ",";
  s += ";b=";
  for (const Integer& v : b) s += v.get_str() + ",";
  s += ";P=";
  if (ps)
    for (std::uint64_t p : ps->primes) s += std::to_string(p) + ",";
  return s;
}

}  // namespace

RatioConfig make_config(std::int64_t k, const Integer& a_scale, std::vector<Integer> a,
                        std::vector<Integer> b, std::optional<PrimeSet> prime_set) {
  if (k < 1) throw std::invalid_argument("make_config: k must be >= 1");
  if (a_scale < 1) throw std::invalid_argument("make_config: scale must be >= 1");
  for (const auto* list : {&a, &b})
    for (const Integer& v : *list)
      if (v < 1) throw std::invalid_argument("make_config: entries must be positive");

  // cancel common entries (multiset intersection)
  std::map<Integer, long> net;
  for (const Integer& v : a) net[v] += 1;
  for (const Integer& v : b) net[v] -= 1;
  a.clear();
  b.clear();
  for (auto it = net.rbegin(); it != net.rend(); ++it) {
    for (long c = 0; c < it->second; ++c) a.push_back(it->first);
    for (long c = 0; c < -it->second; ++c) b.push_back(it->first);
  }

  if (a.empty() || b.empty())
    throw std::invalid_argument("make_config: cancellation leaves an empty list");
  if (a.front() != Integer(k + 1) * a_scale)
    throw std::invalid_argument("make_config: leading numerator entry must be (k+1)*scale");
  if (b.front() != Integer(k) * a_scale)
    throw std::invalid_argument("make_config: leading denominator entry must be k*scale");
  if (a.size() > 1 && a[1] > b.front())
    throw std::invalid_argument("make_config: non-leading entries must not exceed k*scale");
  Integer sum_a = 0, sum_b = 0;
  for (const Integer& v : a) sum_a += v;
  for (const Integer& v : b) sum_b += v;
  if (sum_a != sum_b) throw std::invalid_argument("make_config: entry sums differ");

  RatioConfig cfg;
  cfg.k = k;
  cfg.a_scale = a_scale;
  cfg.a = std::move(a);
  cfg.b = std::move(b);
  cfg.prime_set = std::move(prime_set);
  cfg.L = 1;
  for (const auto* list : {&cfg.a, &cfg.b})
    for (const Integer& v : *list) cfg.L = lcm(cfg.L, v);
  cfg.config_id = fnv1a64_hex(canonical_form(k, a_scale, cfg.a, cfg.b, cfg.prime_set));
  return cfg;
}

RatioConfig compile_prime_set(std::int64_t k, const PrimeSet& set) {
  if (k < 1) throw std::invalid_argument("compile_prime_set: k must be >= 1");
  auto divisors = squarefree_divisors(set);
  std::vector<Integer> a, b;
  Integer Q = set.Q;
  for (const auto& d : divisors) {
    Integer m = d.m;
    // factor ((k+1)Qn/m)! / ((kQn/m)! (Qn/m)!), inverted when mu = -1
    if (d.mu > 0) {
      a.push_back(Integer(k + 1) * Q / m);
      b.push_back(Integer(k) * Q / m);
      b.push_back(Q / m);
    } else {
      b.push_back(Integer(k + 1) * Q / m);
      a.push_back(Integer(k) * Q / m);
      a.push_back(Q / m);
    }
  }
  RatioConfig cfg = make_config(k, Q, std::move(a), std::move(b), set);
  // the survivors of cancellation always include (k+1)Q and kQ, and every
  // entry divides k(k+1)Q, so the grid is exactly k(k+1)Q
  if (cfg.L != Integer(k) * Integer(k + 1) * Q)
    throw integrity_error("compile_prime_set: grid is not k(k+1)Q");
  return cfg;
}

RatioConfig preset(const std::string& name) {
  auto I = [](long v) { return Integer(v); };
  if (name == "erdos")
    return make_config(1, 1, {I(2)}, {I(1), I(1)});
  if (name == "bachraoui")
    return make_config(2, 2, {I(6), I(1)}, {I(4), I(3)});
  if (name == "sainose")
    return make_config(2, 2, {I(6), I(2)}, {I(4), I(3), I(1)});
  if (name == "balliet4")
    return make_config(4, 6, {I(30), I(12), I(8), I(3), I(2)}, {I(24), I(15), I(10), I(6)});
  throw std::invalid_argument("preset: unknown name '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"erdos", "bachraoui", "sainose", "balliet4"};
}

Enclosure weight_direct(const RatioConfig& cfg, const Rational& width_target) {
  if (width_target.sign() <= 0)
    throw std::invalid_argument("weight_direct: width_target must be positive");
  // per-entry ln width w_e scaled by the entry itself; splitting the
  // budget by total mass keeps the sum inside width_target
  Rational mass = 0;
  for (const auto* list : {&cfg.a, &cfg.b})
    for (const Integer& v : *list) mass += Rational(v);
  Rational w_e = width_target / (mass * Rational(2));
  Enclosure acc{Rational(0)};
  for (const Integer& v : cfg.a) {
    if (v == 1) continue;  // 1 * ln 1 = 0
    acc += ln_enclosure(Rational(v), w_e).scale(Rational(v));
  }
  for (const Integer& v : cfg.b) {
    if (v == 1) continue;
    acc -= ln_enclosure(Rational(v), w_e).scale(Rational(v));
  }
  return acc;
}

Enclosure weight_closed_form(std::int64_t k, const PrimeSet& set,
                             const Rational& width_target) {
  if (k < 1) throw std::invalid_argument("weight_closed_form: k must be >= 1");
  if (width_target.sign() <= 0)
    throw std::invalid_argument("weight_closed_form: width_target must be positive");
  Rational phi(set.phi);
  Rational kp1((long long)k + 1), kk((long long)k);
  Rational w1 = width_target / (Rational(2) * phi * kp1);
  Enclosure acc = ln_enclosure(kp1, w1).scale(kp1);
  if (k > 1) {
    Rational w2 = width_target / (Rational(2) * phi * kk);
    acc -= ln_enclosure(kk, w2).scale(kk);
  }
  return acc.scale(phi);
}

}  // namespace primecert
