#include "primecert/certify.hpp"

#include <algorithm>
#include <map>

#include "primecert/errors.hpp"

namespace primecert {

namespace {

const char* kGenerator = "primecert 1.0 indicator-sweep";

// factor small integers by trial division; exponents accumulate into `out`
void add_factorization(std::map<Integer, Integer>& out, Integer v, const Integer& mult) {
  if (v < 1) throw std::invalid_argument("factorization: value must be >= 1");
  for (Integer p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
    while (v % p == 0) {
      out[p] += mult;
      v /= p;
    }
  }
  if (v > 1) out[v] += mult;
}

// Exact test of  phi(Q)((k+1)ln(k+1) - k ln k) == c * ln(beta), by
// comparing prime exponent vectors of (k+1)^((k+1)phi cd) / k^(k phi cd)
// and (bn/bd)^cn where c = cn/cd.
bool sides_exactly_equal(std::int64_t k, const Integer& phi, const Rational& c,
                         const Rational& beta) {
  std::map<Integer, Integer> e;
  Integer cd = c.den(), cn = c.num();
  add_factorization(e, Integer(k + 1), phi * Integer(k + 1) * cd);
  add_factorization(e, Integer(k), -phi * Integer(k) * cd);
  add_factorization(e, beta.num(), -cn);
  add_factorization(e, beta.den(), cn);
  for (const auto& [p, ex] : e)
    if (ex != 0) return false;
  return true;
}

struct ConditionSides {
  Enclosure lhs, rhs;
};

ConditionSides condition_enclosures(const RatioConfig& cfg, const Rational& c_upper,
                                    const Rational& C, const Rational& beta,
                                    const Rational& width, bool direct_weight) {
  ConditionSides s;
  s.lhs = direct_weight ? weight_direct(cfg, width)
                        : weight_closed_form(cfg.k, *cfg.prime_set, width);
  Rational w_beta = c_upper.sign() > 0 ? width / c_upper : Rational(1);
  s.rhs = ln_enclosure(beta, w_beta).scale(c_upper);
  return s;
}

Rational tail_c_upper(const RatioConfig& cfg, const SweepReport& report) {
  Rational c(0);
  for (const Rational& ci : report.crossings) c += Rational(1) / ci;
  if (!report.exhaustive) {
    Integer cap = max_abs_bound(*cfg.prime_set);
    Integer missing = cap - Integer(report.m_found);
    if (missing < 0) throw integrity_error("c_upper: m_found above the level cap");
    c += Rational(missing) * Rational(cfg.a1()) / Rational((long long)report.scan_limit_D);
  }
  return c;
}

}  // namespace

ConditionResult evaluate_condition(const RatioConfig& cfg, const SweepReport& report,
                                   const Rational& C, const Rational& beta,
                                   const EvalOptions& opt) {
  if (!cfg.prime_set)
    throw std::invalid_argument("evaluate_condition: prime-set config required");
  if (report.config_id != cfg.config_id)
    throw integrity_error("evaluate_condition: report does not match the config");
  if (beta <= Rational(1))
    throw std::invalid_argument("evaluate_condition: beta must be > 1");
  if (C.sign() <= 0) throw std::invalid_argument("evaluate_condition: C must be positive");
  if (opt.start_width.sign() <= 0)
    throw std::invalid_argument("evaluate_condition: start width must be positive");

  ConditionResult res;
  res.c_upper = report.exhaustive && report.c_exact ? *report.c_exact
                                                    : tail_c_upper(cfg, report);

  // enclosures must separate by more than the 6-decimal display grain so
  // the stored endpoint strings still witness the verdict
  const Rational display_margin(4, 1000000);
  Rational w = opt.start_width;
  bool equality_probed = false, equal = false;
  for (int round = 0; round < 14; ++round) {
    ConditionSides sides = condition_enclosures(cfg, res.c_upper, C, beta, w, opt.direct_weight);
    res.lhs = sides.lhs;
    res.rhs = sides.rhs;
    if (res.lhs.lo() - res.rhs.hi() > display_margin) {
      res.verdict = "holds";
      return res;
    }
    if (res.rhs.lo() - res.lhs.hi() > display_margin) {
      res.verdict = report.exhaustive ? "condition-false" : "undecided";
      return res;
    }
    if (!equality_probed) {
      equality_probed = true;
      equal = sides_exactly_equal(cfg.k, cfg.prime_set->phi, res.c_upper, beta);
    }
    if (equal) {
      // lhs == rhs exactly; strict inequality can never be established
      res.verdict = report.exhaustive ? "condition-false" : "undecided";
      return res;
    }
    w /= Rational(256);
  }
  throw budget_error("evaluate_condition: sides too close to separate within width budget");
}

CertifyResult certify(std::int64_t k, const PrimeSet& set, const CertifyOptions& opt) {
  RatioConfig cfg = compile_prime_set(k, set);
  SweepOptions sopt;
  sopt.threads = opt.threads;

  bool want_exhaustive;
  switch (opt.mode) {
    case CertifyOptions::Mode::automatic:
      want_exhaustive = cfg.L <= Integer(std::to_string(opt.slot_budget));
      break;
    case CertifyOptions::Mode::exhaustive:
      if (cfg.L > Integer(std::to_string(opt.slot_budget)))
        throw budget_error("certify: exhaustive sweep exceeds the slot budget");
      want_exhaustive = true;
      break;
    case CertifyOptions::Mode::bounded:
      want_exhaustive = false;
      break;
  }

  CertifyResult out;
  if (want_exhaustive) {
    out.report = sweep(cfg, SweepMode::Exhaustive(), sopt);
    out.condition = evaluate_condition(cfg, out.report, opt.C, opt.beta);
  } else {
    if (opt.initial_D < 1 || opt.max_D < opt.initial_D)
      throw std::invalid_argument("certify: need 1 <= initial_D <= max_D");
    std::int64_t D = opt.initial_D;
    for (;;) {
      out.report = sweep(cfg, SweepMode::Bounded(D), sopt);
      out.condition = evaluate_condition(cfg, out.report, opt.C, opt.beta);
      if (out.condition.verdict != "undecided") break;
      if (out.report.exhaustive || D >= opt.max_D) break;
      D = std::min(opt.max_D, D * 2);
    }
  }

  Certificate& cert = out.cert;
  cert.version = 1;
  cert.k = k;
  cert.primes = set.primes;
  cert.Q = set.Q;
  cert.phiQ = set.phi;
  cert.C = opt.C;
  cert.beta = opt.beta;
  cert.scan_limit_D = out.report.scan_limit_D;
  cert.exhaustive = out.report.exhaustive;
  cert.thresholds = out.report.thresholds;
  cert.m_found = out.report.m_found;
  cert.m_cap = max_abs_bound(set);
  cert.c_upper = out.condition.c_upper;
  cert.lhs_lo = out.condition.lhs.decimal_lo(6);
  cert.lhs_hi = out.condition.lhs.decimal_hi(6);
  cert.rhs_lo = out.condition.rhs.decimal_lo(6);
  cert.rhs_hi = out.condition.rhs.decimal_hi(6);
  cert.verdict = out.condition.verdict;
  cert.generator = kGenerator;
  return out;
}

VerifyOutcome verify_certificate(const Certificate& cert, int threads) {
  auto reject = [](const char* field) { return VerifyOutcome{false, field}; };
  if (cert.version != 1) return reject("version");
  if (cert.verdict != "holds" && cert.verdict != "condition-false" &&
      cert.verdict != "undecided")
    return reject("verdict");

  PrimeSet set;
  try {
    set = make_prime_set(cert.primes);
  } catch (const std::invalid_argument&) {
    return reject("primes");
  }
  if (set.Q != cert.Q) return reject("Q");
  if (set.phi != cert.phiQ) return reject("phiQ");
  if (max_abs_bound(set) != cert.m_cap) return reject("m_cap");
  if (cert.C.sign() <= 0) return reject("C");
  if (cert.beta <= Rational(1)) return reject("beta");

  RatioConfig cfg;
  try {
    cfg = compile_prime_set(cert.k, set);
  } catch (const std::exception&) {
    return reject("k");
  }

  // independent re-scan with the other engine
  SweepOptions sopt;
  sopt.engine = SweepEngine::floor;
  sopt.threads = threads;
  SweepReport report;
  try {
    report = sweep(cfg,
                   cert.exhaustive ? SweepMode::Exhaustive()
                                   : SweepMode::Bounded(cert.scan_limit_D),
                   sopt);
  } catch (const std::exception&) {
    return reject("scan_limit_D");
  }
  if (report.exhaustive != cert.exhaustive) return reject("exhaustive");
  if (report.scan_limit_D != cert.scan_limit_D) return reject("scan_limit_D");
  if (report.m_found != cert.m_found) return reject("m_found");
  if (report.thresholds != cert.thresholds) return reject("thresholds");

  Rational stored_lhs_lo, stored_lhs_hi, stored_rhs_lo, stored_rhs_hi;
  try {
    stored_lhs_lo = Rational::from_string(cert.lhs_lo);
    stored_lhs_hi = Rational::from_string(cert.lhs_hi);
    stored_rhs_lo = Rational::from_string(cert.rhs_lo);
    stored_rhs_hi = Rational::from_string(cert.rhs_hi);
  } catch (const std::invalid_argument&) {
    return reject("lhs");
  }
  if (stored_lhs_lo > stored_lhs_hi) return reject("lhs");
  if (stored_rhs_lo > stored_rhs_hi) return reject("rhs");
  Enclosure stored_lhs(stored_lhs_lo, stored_lhs_hi), stored_rhs(stored_rhs_lo, stored_rhs_hi);

  // verdict recomputation, independent weight route, tighter widths
  EvalOptions eopt;
  eopt.direct_weight = true;
  Rational sw = stored_lhs.width() + stored_rhs.width();
  if (sw.sign() > 0 && sw / Rational(2) < eopt.start_width) eopt.start_width = sw / Rational(2);
  ConditionResult cond;
  try {
    cond = evaluate_condition(cfg, report, cert.C, cert.beta, eopt);
  } catch (const std::exception&) {
    return reject("verdict");
  }
  if (cond.c_upper != cert.c_upper) return reject("c_upper");
  if (cond.verdict != cert.verdict) return reject("verdict");

  // stored endpoints must contain a tighter recomputation
  bool contained = false;
  Rational w = sw.sign() > 0 ? sw / Rational(4) : Rational(1, 1000000);
  for (int attempt = 0; attempt < 4; ++attempt) {
    ConditionSides sides =
        condition_enclosures(cfg, cond.c_upper, cert.C, cert.beta, w, true);
    if (stored_lhs.contains(sides.lhs) && stored_rhs.contains(sides.rhs)) {
      contained = true;
      break;
    }
    w /= Rational(16);
  }
  if (!contained) {
    ConditionSides sides =
        condition_enclosures(cfg, cond.c_upper, cert.C, cert.beta, w * Rational(16), true);
    if (!stored_lhs.contains(sides.lhs)) return reject("lhs");
    return reject("rhs");
  }

  // the stored strings themselves must witness the verdict
  if (cert.verdict == "holds" && !(stored_lhs_lo > stored_rhs_hi)) return reject("verdict");
  return VerifyOutcome{true, ""};
}

Integer validity_floor(const RatioConfig& cfg) {
  Integer f1 = (Rational(1296) / Rational(cfg.a1())).ceil();
  Integer f2 = (Rational(cfg.a1()) / Rational(cfg.b1() * cfg.b1())).ceil();
  Integer f = std::max(Integer(1), std::max(f1, f2));
  return f;
}

namespace {

// Shared state for the certified count lower bound: everything that does
// not depend on n is enclosed once.
struct BoundEvaluator {
  const RatioConfig& cfg;
  Rational a1, b1;
  Rational s_minus_t;
  Rational t;
  Enclosure lambda;     // sum a ln a - sum b ln b
  Enclosure ln_prod_b;  // sum over denominator entries
  Enclosure lnC, lnB;
  std::vector<Rational> crossings;
  Integer tail_count;   // unseen levels, bounded by the cap
  Rational tail_x;      // their 1/c_i upper bound: a1 / D
  Rational m_high;      // global |G| bound used for small primes

  BoundEvaluator(const RatioConfig& c, const SweepReport& report, const Rational& C,
                 const Rational& beta)
      : cfg(c), a1(c.a1()), b1(c.b1()) {
    if (report.config_id != c.config_id)
      throw integrity_error("bound: report does not match the config");
    if (beta <= Rational(1)) throw std::invalid_argument("bound: beta must be > 1");
    if (C.sign() <= 0) throw std::invalid_argument("bound: C must be positive");
    s_minus_t = Rational((long long)c.s()) - Rational((long long)c.t());
    t = Rational((long long)c.t());
    crossings = report.crossings;

    Integer cap;
    if (c.prime_set) {
      cap = max_abs_bound(*c.prime_set);
    } else if (report.exhaustive) {
      cap = report.m_found;  // exhaustive scan of one period sees the true max
    } else {
      throw std::invalid_argument(
          "bound: bounded scan of a list config has no level cap");
    }
    if (Integer(report.m_found) > cap)
      throw integrity_error("bound: m_found above the level cap");
    tail_count = cap - Integer(report.m_found);
    if (tail_count > 0) {
      if (report.scan_limit_D < 1) throw integrity_error("bound: missing scan limit");
      tail_x = a1 / Rational((long long)report.scan_limit_D);
    }
    m_high = Rational(cap);

    Rational mass(0);
    for (const auto* list : {&c.a, &c.b})
      for (const Integer& v : *list) mass += Rational(v);
    lambda = weight_direct(c, std::max(mass, Rational(1)) / Rational(pow2(45)));
    Enclosure lp{Rational(0)};
    Rational w_term = Rational(1, 1000) / (Rational((long long)c.t()) * Rational(pow2(20)));
    for (const Integer& v : c.b)
      if (v != 1) lp += ln_enclosure(Rational(v), w_term);
    ln_prod_b = lp;
    lnC = ln_enclosure(C, Rational(Integer(1), pow2(60)));
    lnB = ln_enclosure(beta, Rational(Integer(1), pow2(60)));
  }

  // Upper-bound enclosure of the theta-sum over threshold levels:
  // sum_i max(0, ln C + (n / c_i) ln beta), tail levels using a1 / D.
  Enclosure theta_sum(const Rational& n) const {
    auto clamp = [](const Enclosure& e) {
      Rational lo = e.lo().sign() > 0 ? e.lo() : Rational(0);
      Rational hi = e.hi().sign() > 0 ? e.hi() : Rational(0);
      return Enclosure(lo, hi);
    };
    Enclosure acc{Rational(0)};
    for (const Rational& ci : crossings) acc += clamp(lnC + lnB.scale(n / ci));
    if (tail_count > 0) acc += clamp(lnC + lnB.scale(n * tail_x)).scale(Rational(tail_count));
    return acc;
  }

  // Enclosure of the numerator  n Lambda + (s-t) - ln prod b - t ln n
  //   - theta_sum(n) - (M sqrt(a1 n)/3) ln(a1 n) - N ln(a1 n).
  Enclosure numer(const Integer& n, const Integer& N, int tighten) const {
    Rational rn(n);
    Rational w = Rational(1, 1000000);
    for (int i = 0; i < tighten; ++i) w /= Rational(4096);
    Enclosure ln_n = ln_enclosure(rn, w);
    Enclosure ln_a1n = ln_enclosure(a1 * rn, w);
    Rational sq = sqrt_upper(a1 * rn);
    Enclosure v = lambda.scale(rn) + Enclosure(s_minus_t) - ln_prod_b - ln_n.scale(t) -
                  theta_sum(rn) - ln_a1n.scale(m_high * sq / Rational(3)) -
                  ln_a1n.scale(Rational(N));
    return v;
  }

  Enclosure denom(const Integer& n, int tighten) const {
    Rational w = Rational(1, 1000000);
    for (int i = 0; i < tighten; ++i) w /= Rational(4096);
    return ln_enclosure(a1 * Rational(n), w);
  }
};

}  // namespace

Rational nk_lower_bound(const RatioConfig& cfg, const SweepReport& report, const Rational& C,
                        const Rational& beta, const Integer& n) {
  Integer floor_n = validity_floor(cfg);
  if (n < floor_n)
    throw std::domain_error("nk_lower_bound: n below validity floor " + floor_n.get_str());
  BoundEvaluator ev(cfg, report, C, beta);
  Enclosure num = ev.numer(n, 0, 0);
  Enclosure den = ev.denom(n, 0);
  return num.div(den).lo();
}

ThresholdResult effective_threshold(const RatioConfig& cfg, const SweepReport& report,
                                    const Rational& C, const Rational& beta,
                                    const Integer& N) {
  if (N < 0) throw std::invalid_argument("effective_threshold: N must be >= 0");
  ThresholdResult res;
  res.floor_n = validity_floor(cfg);
  if (N == 0) {
    // a lower bound of zero holds wherever the argument itself applies
    res.n0 = res.floor_n;
    res.n_star = res.floor_n;
    return res;
  }
  BoundEvaluator ev(cfg, report, C, beta);

  // margin per unit n; must be positive for any threshold to exist
  Rational c_used(0);
  for (const Rational& ci : ev.crossings) c_used += Rational(1) / ci;
  if (ev.tail_count > 0) c_used += Rational(ev.tail_count) * ev.tail_x;
  Rational A = ev.lambda.lo() - c_used * ev.lnB.hi();
  if (A.sign() <= 0)
    throw std::domain_error("effective_threshold: condition margin is not positive");

  // constants bucket: everything in the numerator that neither grows
  // with n nor is already charged to the ln n / sqrt terms
  Rational K = ev.ln_prod_b.hi();
  if (ev.s_minus_t.sign() < 0) K -= ev.s_minus_t;
  if (ev.lnC.hi().sign() > 0) K += ev.m_high * ev.lnC.hi();
  // ln(a1 n) = ln a1 + ln n: charge N ln a1 to the constants
  K += Rational(N) * ln_enclosure(ev.a1, Rational(1, 1000)).hi();
  Rational tN = ev.t + Rational(N);

  // dominance test at n: each of the three sublinear pieces stays below
  // A n / 4; each ratio is decreasing, so truth at n persists beyond it
  auto dominated = [&](const Integer& n) {
    Rational rn(n);
    Rational quarter = A * rn / Rational(4);
    if (K > quarter) return false;
    Enclosure ln_n = ln_enclosure(rn, Rational(1, 1000));
    if (tN * ln_n.hi() > quarter) return false;
    Enclosure ln_a1n = ln_enclosure(ev.a1 * rn, Rational(1, 1000));
    Rational sq = sqrt_upper(ev.a1 * rn);
    if (ev.m_high * sq / Rational(3) * ln_a1n.hi() > quarter) return false;
    return true;
  };

  // grow to a dominated point, then binary-refine the frontier; n >= 3
  // keeps ln(n)/n on its decreasing branch so dominance persists upward
  Integer start = std::max(res.floor_n, Integer(3));
  Integer lo = start, hi = start;
  const Integer kCap = pow10(15);
  while (!dominated(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kCap) throw budget_error("effective_threshold: dominance point out of range");
  }
  while (lo + 1 < hi) {
    Integer mid = (lo + hi) / 2;
    if (dominated(mid))
      hi = mid;
    else
      lo = mid;
  }
  res.n_star = hi;

  // below the dominance point the bound is checked pointwise, descending
  // until it first fails; that failure pins n0
  auto point_holds = [&](const Integer& n) {
    for (int tighten = 0; tighten < 3; ++tighten) {
      Enclosure num = ev.numer(n, N, tighten);
      if (num.lo().sign() >= 0) return true;
      if (num.hi().sign() < 0) return false;
    }
    return false;  // straddles zero at the tightest width: not certified
  };
  const Integer scan_cap = 2000000;
  if (res.n_star - res.floor_n > scan_cap)
    throw budget_error("effective_threshold: pointwise range too large");
  Integer n0 = res.n_star;
  while (n0 > res.floor_n && point_holds(n0 - 1)) n0 -= 1;
  res.n0 = n0;
  return res;
}

}  // namespace primecert
