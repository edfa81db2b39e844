#include "primecert/sweep.hpp"

#include <atomic>
#include <cstring>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "primecert/errors.hpp"

namespace primecert {

namespace {

constexpr std::int64_t kSegSlots = std::int64_t(1) << 24;  // fixed: determinism
constexpr std::int64_t kBlockSlots = std::int64_t(1) << 20;
constexpr std::int64_t kGridCap = std::int64_t(1) << 61;

std::int64_t to_i64(const Integer& v, const char* what) {
  if (!v.fits_slong_p()) throw budget_error(std::string(what) + " exceeds 64-bit range");
  return v.get_si();
}

bool fits_u64(const Integer& v) { return sgn(v) >= 0 && v.fits_ulong_p(); }

}  // namespace

long g_floor(const RatioConfig& cfg, const Rational& x) {
  if (x.sign() < 0) throw std::domain_error("g_floor: x must be >= 0");
  const Integer &num = x.num(), &den = x.den();
  if (fits_u64(num) && fits_u64(den)) {
    std::uint64_t n = num.get_ui(), d = den.get_ui();
    __int128 acc = 0;
    bool ok = true;
    for (const Integer& e : cfg.a) {
      if (!e.fits_ulong_p()) { ok = false; break; }
      acc += (__int128)((unsigned __int128)e.get_ui() * n / d);
    }
    if (ok) {
      for (const Integer& e : cfg.b) {
        if (!e.fits_ulong_p()) { ok = false; break; }
        acc -= (__int128)((unsigned __int128)e.get_ui() * n / d);
      }
      if (ok) {
        if (acc > std::numeric_limits<long>::max() || acc < std::numeric_limits<long>::min())
          throw budget_error("g_floor: value out of range");
        return (long)acc;
      }
    }
  }
  Integer acc = 0, q;
  for (const Integer& e : cfg.a) {
    mpz_fdiv_q(q.get_mpz_t(), Integer(e * num).get_mpz_t(), den.get_mpz_t());
    acc += q;
  }
  for (const Integer& e : cfg.b) {
    mpz_fdiv_q(q.get_mpz_t(), Integer(e * num).get_mpz_t(), den.get_mpz_t());
    acc -= q;
  }
  return to_i64(acc, "g_floor value");
}

IndicatorEvaluator::IndicatorEvaluator(std::int64_t k, const PrimeSet& set)
    : k_(k), divisors_(squarefree_divisors(set)), Q_(set.Q) {
  if (k < 1) throw std::invalid_argument("IndicatorEvaluator: k must be >= 1");
}

long IndicatorEvaluator::eval(const Rational& x) const {
  if (x.sign() < 0) throw std::domain_error("g_indicator: x must be >= 0");
  // G has period 1; count coprime residues via Moebius over divisors of Q
  Rational f = x.frac();
  const Integer &num = f.num(), &den = f.den();
  Integer scales[3] = {Integer(k_ + 1) * Q_, Integer(k_) * Q_, Q_};
  int sign[3] = {1, -1, -1};
  bool fast = fits_u64(num) && fits_u64(den) && fits_u64(scales[0]);
  if (fast)
    for (const auto& d : divisors_)
      if (!fits_u64(d.m)) { fast = false; break; }
  long total = 0;
  if (fast) {
    std::uint64_t n = num.get_ui(), dn = den.get_ui();
    for (int si = 0; si < 3; ++si) {
      unsigned __int128 sn = (unsigned __int128)scales[si].get_ui() * n;
      long c = 0;
      for (const auto& d : divisors_) {
        unsigned __int128 md = (unsigned __int128)d.m.get_ui() * dn;
        c += d.mu * (long)(sn / md);
      }
      total += sign[si] * c;
    }
    return total;
  }
  for (int si = 0; si < 3; ++si) {
    Integer sn = scales[si] * num, c = 0, q;
    for (const auto& d : divisors_) {
      mpz_fdiv_q(q.get_mpz_t(), sn.get_mpz_t(), Integer(d.m * den).get_mpz_t());
      c += d.mu > 0 ? q : -q;
    }
    total += sign[si] * to_i64(c, "g_indicator term");
  }
  return total;
}

long g_indicator(std::int64_t k, const PrimeSet& set, const Rational& x) {
  return IndicatorEvaluator(k, set).eval(x);
}

Integer max_abs_bound(const PrimeSet& set) {
  if (set.primes.empty()) return 1;
  return pow2((unsigned)(set.primes.size() - 1));
}

namespace {

struct SegRecord {
  std::vector<std::pair<int, std::int64_t>> crossings;  // (level, grid index)
};

struct FloorProg {
  std::int64_t step;
  std::int32_t weight;
};

struct IndicatorStream {
  std::int64_t step;  // events sit at j = u * step, u coprime to Q
  std::int32_t delta;
};

struct Scratch {
  std::vector<std::int32_t> delta;
  std::vector<std::uint8_t> flags;
  Scratch() : delta(kBlockSlots), flags(kBlockSlots + 2) {}
};

}  // namespace

SweepReport sweep(const RatioConfig& cfg, SweepMode mode, const SweepOptions& opt) {
  if (opt.threads < 1 || opt.threads > 256)
    throw std::invalid_argument("sweep: threads must be in [1, 256]");
  if (cfg.L > kGridCap) throw budget_error("sweep: grid exceeds slot cap");
  const std::int64_t T = to_i64(cfg.L, "sweep grid");
  const std::int64_t a1 = to_i64(cfg.a1(), "a_1");
  const std::int64_t b1 = to_i64(cfg.b1(), "b_1");
  if (T % a1 != 0 || T % b1 != 0) throw integrity_error("sweep: grid not divisible by leads");
  const std::int64_t step_a1 = T / a1;

  const std::int64_t j_start = T / b1;
  const std::int64_t period_end = j_start + T;
  bool exhaustive = mode.exhaustive;
  std::int64_t j_end = period_end;
  if (!mode.exhaustive) {
    if (mode.D < 1) throw std::invalid_argument("sweep: scan limit must be >= 1");
    if (mode.D > (kGridCap / step_a1)) throw budget_error("sweep: scan limit exceeds slot cap");
    j_end = mode.D * step_a1 + 1;
    if (j_end >= period_end) {
      j_end = period_end;  // bounded window spans a full period
      exhaustive = true;
    }
    if (j_end <= j_start)
      throw std::invalid_argument("sweep: scan limit ends before the window start");
  }

  // engine selection: the indicator engine needs the prime-set structure
  bool use_indicator;
  switch (opt.engine) {
    case SweepEngine::automatic:
      use_indicator = cfg.prime_set.has_value();
      break;
    case SweepEngine::indicator:
      if (!cfg.prime_set)
        throw std::invalid_argument("sweep: indicator engine requires a prime-set config");
      use_indicator = true;
      break;
    case SweepEngine::floor:
      use_indicator = false;
      break;
  }

  std::vector<FloorProg> progs;
  std::vector<IndicatorStream> streams;
  std::vector<std::uint64_t> mark_primes;
  if (use_indicator) {
    const Integer& Q = cfg.a_scale;
    const std::pair<Integer, std::int32_t> scaled[3] = {
        {Integer(cfg.k + 1) * Q, +1}, {Integer(cfg.k) * Q, -1}, {Q, -1}};
    for (const auto& [scale_int, delta] : scaled) {
      if (cfg.L % scale_int != 0) throw integrity_error("sweep: stream off the grid");
      streams.push_back({to_i64(Integer(cfg.L / scale_int), "stream step"), delta});
    }
    mark_primes = cfg.prime_set->primes;
  } else {
    std::map<std::int64_t, std::int32_t> net;
    for (const Integer& e : cfg.a) net[to_i64(e, "entry")] += 1;
    for (const Integer& e : cfg.b) net[to_i64(e, "entry")] -= 1;
    for (auto& [e, w] : net)
      if (w != 0) progs.push_back({T / e, w});
  }

  const std::int64_t n_seg = (j_end - j_start + kSegSlots - 1) / kSegSlots;
  std::vector<SegRecord> records((std::size_t)n_seg);
  std::atomic<std::int64_t> next_seg{0};

  auto worker = [&]() {
    Scratch scratch;
    for (;;) {
      std::int64_t seg = next_seg.fetch_add(1);
      if (seg >= n_seg) return;
      const std::int64_t s0 = j_start + seg * kSegSlots;
      const std::int64_t s1 = std::min(s0 + kSegSlots, j_end);
      SegRecord& rec = records[(std::size_t)seg];
      std::int64_t g = g_floor(cfg, Rational((long long)s0, (long long)T));
      std::int64_t segmax = 0;
      auto record_up_to = [&](std::int64_t gv, std::int64_t j) {
        for (std::int64_t lv = segmax + 1; lv <= gv; ++lv)
          rec.crossings.push_back({(int)lv, j});
        segmax = gv;
      };
      if (g > segmax) record_up_to(g, s0);
      for (std::int64_t b0 = s0; b0 < s1; b0 += kBlockSlots) {
        const std::int64_t bend = std::min(b0 + kBlockSlots, s1);
        const std::int64_t len = bend - b0;
        std::memset(scratch.delta.data(), 0, (std::size_t)len * sizeof(std::int32_t));
        if (use_indicator) {
          for (const auto& st : streams) {
            const std::int64_t s = st.step;
            std::int64_t u_lo = (b0 + s - 1) / s;
            if (u_lo < 1) u_lo = 1;
            const std::int64_t u_hi = (bend - 1) / s;
            if (u_lo > u_hi) continue;
            const std::int64_t un = u_hi - u_lo + 1;
            std::memset(scratch.flags.data(), 1, (std::size_t)un);
            for (std::uint64_t p : mark_primes) {
              std::int64_t m = ((u_lo + (std::int64_t)p - 1) / (std::int64_t)p) * (std::int64_t)p;
              for (; m <= u_hi; m += (std::int64_t)p) scratch.flags[(std::size_t)(m - u_lo)] = 0;
            }
            std::int32_t* delta = scratch.delta.data();
            const std::uint8_t* fl = scratch.flags.data();
            for (std::int64_t u = u_lo; u <= u_hi; ++u)
              if (fl[u - u_lo]) delta[u * s - b0] += st.delta;
          }
        } else {
          for (const auto& pr : progs) {
            const std::int64_t step = pr.step;
            std::int64_t j = ((b0 + step - 1) / step) * step;
            std::int32_t* delta = scratch.delta.data();
            for (; j < bend; j += step) delta[j - b0] += pr.weight;
          }
        }
        const std::int32_t* delta = scratch.delta.data();
        std::int64_t jfrom = (b0 == s0) ? s0 + 1 : b0;  // s0's jumps are inside the base value
        for (std::int64_t j = jfrom; j < bend; ++j) {
          g += delta[j - b0];
          if (g > segmax) record_up_to(g, j);
        }
      }
    }
  };

  const int nthreads = (int)std::min<std::int64_t>(opt.threads, n_seg);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr err;
    auto guarded = [&]() {
      try {
        worker();
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next_seg.store(n_seg);  // drain the queue
      }
    };
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(guarded);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }

  // first crossing per level, in segment order
  std::vector<std::int64_t> first_j;
  for (const auto& rec : records)
    for (const auto& [level, j] : rec.crossings) {
      if ((std::size_t)level > first_j.size()) {
        if ((std::size_t)level != first_j.size() + 1)
          throw integrity_error("sweep: non-contiguous level recording");
        first_j.push_back(j);
      }
    }

  SweepReport rep;
  rep.config_id = cfg.config_id;
  rep.k = cfg.k;
  rep.exhaustive = exhaustive;
  rep.scan_limit_D = exhaustive ? (j_end - 1) / step_a1 : mode.D;
  rep.m_found = (int)first_j.size();
  rep.engine_used = use_indicator ? "indicator" : "floor";
  rep.thresholds_on_grid = true;
  for (std::int64_t j : first_j) {
    rep.crossings.push_back(Rational((long long)j, (long long)T));
    if (j % step_a1 == 0) {
      rep.thresholds.push_back(j / step_a1);
    } else {
      rep.thresholds_on_grid = false;
    }
  }
  if (!rep.thresholds_on_grid) rep.thresholds.clear();
  if (cfg.prime_set) {
    if (!rep.thresholds_on_grid)
      throw integrity_error("sweep: prime-set crossing off the a_1 grid");
    for (std::int64_t d : rep.thresholds)
      if (gcd(Integer(static_cast<long>(d)), cfg.a_scale) != 1)
        throw integrity_error("sweep: threshold shares a factor with Q");
  }
  if (exhaustive) {
    Rational c(0);
    for (std::int64_t j : first_j) c += Rational((long long)T, (long long)j);
    rep.c_exact = c;
  }
  return rep;
}

}  // namespace primecert
