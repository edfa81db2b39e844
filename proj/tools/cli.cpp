#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "primecert/certify.hpp"
#include "primecert/errors.hpp"
#include "primecert/json_io.hpp"
#include "primecert/lemma_checks.hpp"
#include "primecert/primes.hpp"
#include "primecert/published.hpp"
#include "primecert/ratio_config.hpp"
#include "primecert/search.hpp"
#include "primecert/sweep.hpp"

namespace primecert::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string strip_underscores(const std::string& raw) {
  std::string s;
  s.reserve(raw.size());
  for (char c : raw)
    if (c != '_') s.push_back(c);
  return s;
}

std::int64_t to_int(const std::string& raw, const std::string& what) {
  std::string s = strip_underscores(raw);
  if (s.empty()) throw UsageError(what + ": empty integer");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw UsageError(what + ": not an integer: " + raw);
  }
  if (pos != s.size()) throw UsageError(what + ": not an integer: " + raw);
  return v;
}

std::vector<std::uint64_t> to_primes(const std::string& raw, const std::string& what) {
  std::vector<std::uint64_t> out;
  std::string item;
  std::string s = raw + ",";
  for (char c : s) {
    if (c != ',') {
      item.push_back(c);
      continue;
    }
    if (item.empty()) continue;
    std::int64_t v = to_int(item, what);
    if (v < 2) throw UsageError(what + ": " + item + " is not a prime");
    out.push_back(static_cast<std::uint64_t>(v));
    item.clear();
  }
  if (out.empty()) throw UsageError(what + ": empty prime list");
  return out;
}

// --theta-bound names the primorial bound by its base: 4 selects the
// pair (1/8, 4), 3.4 the sharper (1, 17/5). Anything else is unsupported.
void apply_theta(const std::string& raw, Rational& C, Rational& beta) {
  Rational base;
  try {
    base = Rational::from_string(strip_underscores(raw));
  } catch (const std::exception&) {
    throw UsageError("--theta-bound: cannot parse " + raw);
  }
  if (base == Rational(4)) {
    C = Rational(1, 8);
    beta = Rational(4);
  } else if (base == Rational(17, 5)) {
    C = Rational(1);
    beta = Rational(17, 5);
  } else {
    throw UsageError("--theta-bound: supported bases are 4 and 3.4");
  }
}

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

std::string seconds_since(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  double s = std::chrono::duration<double>(dt).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

ordered_json warnings_json(const std::vector<Discrepancy>& ds) {
  ordered_json arr = ordered_json::array();
  for (const auto& d : ds) {
    ordered_json w;
    w["field"] = d.field;
    w["computed"] = d.computed;
    w["published"] = d.published;
    arr.push_back(w);
  }
  return arr;
}

ordered_json u64_array(const std::vector<std::uint64_t>& v) {
  ordered_json arr = ordered_json::array();
  for (auto x : v) arr.push_back(x);
  return arr;
}

void emit(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << "\n"; }

// ---- certify ---------------------------------------------------------

struct CertifyArgs {
  std::string k, primes, scan_limit, max_scan, theta = "4", threads, out_path;
  bool exhaustive = false;
  std::string format = "json";
};

int do_certify(const CertifyArgs& a, std::ostream& out, RunOutcome& outcome) {
  auto t0 = std::chrono::steady_clock::now();
  std::int64_t k = to_int(a.k, "--k");
  PrimeSet set = make_prime_set(to_primes(a.primes, "--primes"));

  CertifyOptions opt;
  apply_theta(a.theta, opt.C, opt.beta);
  opt.threads = a.threads.empty() ? default_threads()
                                  : static_cast<int>(to_int(a.threads, "--threads"));
  if (a.exhaustive) {
    opt.mode = CertifyOptions::Mode::exhaustive;
  } else if (!a.scan_limit.empty()) {
    opt.mode = CertifyOptions::Mode::bounded;
    opt.initial_D = to_int(a.scan_limit, "--scan-limit");
    opt.max_D = std::max(opt.max_D, opt.initial_D);
  }
  if (!a.max_scan.empty()) opt.max_D = to_int(a.max_scan, "--max-scan");

  CertifyResult res = certify(k, set, opt);
  std::vector<Discrepancy> warn = compare_to_reference(res.cert, res.condition);
  std::string cert_text = certificate_to_json(res.cert);

  if (!a.out_path.empty()) {
    write_file_atomic(a.out_path, cert_text);
    outcome.report_path = a.out_path;
  }

  if (a.format == "table") {
    out << "k: " << res.cert.k << "  primes:";
    for (auto p : res.cert.primes) out << " " << p;
    out << "\n";
    out << "verdict: " << res.cert.verdict
        << "  exhaustive: " << (res.cert.exhaustive ? "yes" : "no")
        << "  scan limit D: " << res.cert.scan_limit_D << "\n";
    out << "m: " << res.cert.m_found << "  thresholds:";
    for (auto d : res.cert.thresholds) out << " " << d;
    out << "\n";
    out << "lhs: [" << res.cert.lhs_lo << ", " << res.cert.lhs_hi << "]\n";
    out << "rhs: [" << res.cert.rhs_lo << ", " << res.cert.rhs_hi << "]\n";
    for (const auto& w : warn)
      out << "warning: " << w.field << " computed " << w.computed << ", published "
          << w.published << "\n";
    if (!a.out_path.empty()) out << "certificate: " << a.out_path << "\n";
    out << "elapsed: " << seconds_since(t0) << "\n";
  } else {
    ordered_json doc;
    doc["verdict"] = res.cert.verdict;
    doc["exhaustive"] = res.cert.exhaustive;
    doc["scan_limit_D"] = res.cert.scan_limit_D;
    if (!a.out_path.empty())
      doc["certificate_path"] = a.out_path;
    else
      doc["certificate"] = ordered_json::parse(cert_text);
    doc["warnings"] = warnings_json(warn);
    emit(out, doc);
  }

  if (res.cert.verdict == "holds") return 0;
  if (res.cert.verdict == "condition-false") return 1;
  return 2;
}

// ---- verify ----------------------------------------------------------

struct VerifyArgs {
  std::string path, threads;
  std::string format = "json";
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  int threads = a.threads.empty() ? default_threads()
                                  : static_cast<int>(to_int(a.threads, "--threads"));
  std::string text;
  try {
    text = read_file(a.path);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read ") + a.path + ": " + e.what());
  }
  VerifyOutcome vo = verify_certificate_json(text, threads);
  if (a.format == "table") {
    out << (vo.accepted ? "accepted" : "rejected") << "\n";
    if (!vo.accepted) out << "reason: " << vo.reason << "\n";
  } else {
    ordered_json doc;
    doc["accepted"] = vo.accepted;
    doc["reason"] = vo.reason;
    emit(out, doc);
  }
  return vo.accepted ? 0 : 1;
}

// ---- sweep -----------------------------------------------------------

struct SweepArgs {
  std::string k, primes, preset_name, scan_limit, threads;
  bool exhaustive = false;
  std::string format = "json";
};

int do_sweep(const SweepArgs& a, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  RatioConfig cfg;
  if (!a.preset_name.empty()) {
    if (!a.k.empty() || !a.primes.empty())
      throw UsageError("--preset excludes --k/--primes");
    cfg = preset(a.preset_name);
  } else {
    if (a.k.empty() || a.primes.empty())
      throw UsageError("sweep needs --preset or both --k and --primes");
    cfg = compile_prime_set(to_int(a.k, "--k"),
                            make_prime_set(to_primes(a.primes, "--primes")));
  }
  SweepOptions opt;
  opt.threads = a.threads.empty() ? default_threads()
                                  : static_cast<int>(to_int(a.threads, "--threads"));
  SweepMode mode = SweepMode::Exhaustive();
  if (!a.scan_limit.empty() && !a.exhaustive)
    mode = SweepMode::Bounded(to_int(a.scan_limit, "--scan-limit"));

  SweepReport rep = sweep(cfg, mode, opt);
  Rational a1(cfg.a1());

  if (a.format == "csv") {
    out << "level,d,c_reciprocal_num,c_reciprocal_den\n";
    for (std::size_t i = 0; i < rep.crossings.size(); ++i) {
      Rational d = rep.crossings[i] * a1;
      Rational recip = Rational(1) / rep.crossings[i];
      out << (i + 1) << "," << d.to_string() << "," << recip.num().get_str() << ","
          << recip.den().get_str() << "\n";
    }
    return 0;
  }
  if (a.format == "table") {
    out << "engine: " << rep.engine_used
        << "  exhaustive: " << (rep.exhaustive ? "yes" : "no")
        << "  scan limit D: " << rep.scan_limit_D << "\n";
    out << "m: " << rep.m_found << "\n";
    for (std::size_t i = 0; i < rep.crossings.size(); ++i) {
      out << "  level " << (i + 1) << ": d = " << (rep.crossings[i] * a1).to_string()
          << ", c_" << (i + 1) << " = " << rep.crossings[i].to_string() << "\n";
    }
    if (rep.c_exact) out << "c: " << rep.c_exact->to_string() << "\n";
    out << "elapsed: " << seconds_since(t0) << "\n";
    return 0;
  }

  ordered_json doc;
  doc["k"] = rep.k;
  doc["engine"] = rep.engine_used;
  doc["exhaustive"] = rep.exhaustive;
  doc["scan_limit_D"] = rep.scan_limit_D;
  doc["m_found"] = rep.m_found;
  ordered_json ths = ordered_json::array();
  for (const auto& c : rep.crossings) ths.push_back((c * a1).to_string());
  doc["thresholds"] = ths;
  ordered_json crs = ordered_json::array();
  for (const auto& c : rep.crossings) crs.push_back(c.to_string());
  doc["crossings"] = crs;
  doc["c_exact"] = rep.c_exact ? ordered_json(rep.c_exact->to_string()) : ordered_json();
  emit(out, doc);
  return 0;
}

// ---- lemmas ----------------------------------------------------------

struct LemmaArgs {
  std::string pi_max = "10000000", primorial_max = "1000000", stirling_max = "10000";
  std::string legendre_max = "2000", legendre_p_max = "50";
  std::string format = "json";
};

ordered_json primorial_json(const PrimorialBoundReport& r) {
  ordered_json doc;
  doc["C"] = r.C.to_string();
  doc["beta"] = r.beta.to_string();
  doc["x_max"] = r.x_max;
  doc["ok"] = r.ok;
  doc["first_violation"] =
      r.first_violation ? ordered_json(*r.first_violation) : ordered_json();
  doc["exact_cross_checked_to"] = r.exact_cross_checked_to;
  ordered_json cps = ordered_json::array();
  for (const auto& cp : r.checkpoints) {
    ordered_json c;
    c["x"] = cp.x;
    c["margin_lo"] = cp.margin_lo;
    cps.push_back(c);
  }
  doc["checkpoints"] = cps;
  return doc;
}

int do_lemmas(const LemmaArgs& a, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  PiBoundReport pi = check_pi_bound(to_int(a.pi_max, "--pi-max"));
  PrimorialBoundReport th1 = check_primorial_bound(
      to_int(a.primorial_max, "--primorial-max"), Rational(1, 8), Rational(4));
  PrimorialBoundReport th2 = check_primorial_bound(
      to_int(a.primorial_max, "--primorial-max"), Rational(1), Rational(17, 5));
  StirlingReport st = check_stirling(to_int(a.stirling_max, "--stirling-max"));
  LegendreReport lg = check_legendre(to_int(a.legendre_max, "--legendre-max"),
                                     to_int(a.legendre_p_max, "--legendre-p-max"));
  bool ok = pi.ok && th1.ok && th2.ok && st.ok && st.equality_only_at_one && lg.ok;

  if (a.format == "table") {
    out << "pi bound to " << pi.x_max << ": " << (pi.ok ? "ok" : "VIOLATED") << "\n";
    out << "primorial (1/8, 4) to " << th1.x_max << ": " << (th1.ok ? "ok" : "VIOLATED")
        << "\n";
    out << "primorial (1, 17/5) to " << th2.x_max << ": "
        << (th2.ok ? "ok" : "VIOLATED") << "\n";
    out << "stirling to " << st.n_max << ": "
        << (st.ok && st.equality_only_at_one ? "ok" : "VIOLATED") << "\n";
    out << "legendre to n=" << lg.n_max << ", p=" << lg.p_max << ": "
        << (lg.ok ? "ok" : "VIOLATED") << "\n";
    out << "elapsed: " << seconds_since(t0) << "\n";
    return ok ? 0 : 1;
  }

  ordered_json doc;
  ordered_json pj;
  pj["x_max"] = pi.x_max;
  pj["ok"] = pi.ok;
  pj["first_violation"] =
      pi.first_violation ? ordered_json(*pi.first_violation) : ordered_json();
  doc["pi"] = pj;
  doc["primorial"] = ordered_json::array({primorial_json(th1), primorial_json(th2)});
  ordered_json sj;
  sj["n_max"] = st.n_max;
  sj["ok"] = st.ok;
  sj["equality_only_at_one"] = st.equality_only_at_one;
  sj["first_violation"] =
      st.first_violation ? ordered_json(*st.first_violation) : ordered_json();
  doc["stirling"] = sj;
  ordered_json lj;
  lj["n_max"] = lg.n_max;
  lj["p_max"] = lg.p_max;
  lj["ok"] = lg.ok;
  doc["legendre"] = lj;
  doc["ok"] = ok;
  emit(out, doc);
  return ok ? 0 : 1;
}

// ---- count -----------------------------------------------------------

struct CountArgs {
  std::string k, n, a = "1";
};

int do_count(const CountArgs& ca, std::ostream& out) {
  std::int64_t k = to_int(ca.k, "--k");
  std::int64_t n = to_int(ca.n, "--n");
  std::int64_t a = to_int(ca.a, "--a");
  if (k < 1 || n < 1 || a < 1) throw UsageError("count: --k, --a, --n must be positive");
  unsigned long long hi = static_cast<unsigned long long>(k + 1) *
                          static_cast<unsigned long long>(a) *
                          static_cast<unsigned long long>(n);
  Sieve sieve(hi);
  out << interval_prime_count(k, a, n, sieve) << "\n";
  return 0;
}

// ---- search ----------------------------------------------------------

struct SearchArgs {
  std::string k, primes, max_depth, max_nodes, max_primes, trial_scan, max_scan;
  std::string theta = "4", threads, out_path, trace_path;
  std::string format = "json";
};

int do_search(const SearchArgs& a, std::ostream& out, RunOutcome& outcome) {
  auto t0 = std::chrono::steady_clock::now();
  std::int64_t k = to_int(a.k, "--k");
  std::vector<std::uint64_t> seed = to_primes(a.primes, "--primes");

  SearchBudget budget;
  apply_theta(a.theta, budget.C, budget.beta);
  if (!a.max_depth.empty()) budget.max_depth = to_int(a.max_depth, "--max-depth");
  if (!a.max_nodes.empty()) budget.max_nodes = to_int(a.max_nodes, "--max-nodes");
  if (!a.max_primes.empty()) budget.max_primes = to_int(a.max_primes, "--max-primes");
  if (!a.trial_scan.empty()) budget.trial_D = to_int(a.trial_scan, "--trial-scan");
  if (!a.max_scan.empty()) budget.max_D = to_int(a.max_scan, "--max-scan");
  budget.threads = a.threads.empty() ? default_threads()
                                     : static_cast<int>(to_int(a.threads, "--threads"));

  SearchResult sr = search_config(k, seed, budget);

  if (!a.trace_path.empty()) {
    std::string lines;
    for (const auto& n : sr.nodes) {
      ordered_json row;
      row["depth"] = n.depth;
      row["primes"] = u64_array(n.primes);
      row["verdict"] = n.verdict;
      row["d_first"] = n.d_first;
      row["scan_limit_D"] = n.scan_limit_D;
      row["exhaustive"] = n.exhaustive;
      row["candidates"] = u64_array(n.candidates);
      lines += row.dump() + "\n";
    }
    write_file_atomic(a.trace_path, lines);
  }

  std::string cert_text;
  if (sr.winner) cert_text = certificate_to_json(sr.winner->cert);
  if (sr.winner && !a.out_path.empty()) {
    write_file_atomic(a.out_path, cert_text);
    outcome.report_path = a.out_path;
  }

  if (a.format == "table") {
    out << "search " << (sr.success ? "succeeded" : "failed") << " after "
        << sr.nodes.size() << " node(s)\n";
    out << "set:";
    for (auto p : sr.primes) out << " " << p;
    out << "\n";
    if (sr.budget_exhausted) out << "budget exhausted\n";
    out << "elapsed: " << seconds_since(t0) << "\n";
  } else {
    ordered_json doc;
    doc["success"] = sr.success;
    doc["k"] = k;
    doc["seed"] = u64_array(seed);
    doc["primes"] = u64_array(sr.primes);
    doc["nodes_evaluated"] = sr.nodes.size();
    doc["budget_exhausted"] = sr.budget_exhausted;
    if (sr.winner && a.out_path.empty())
      doc["certificate"] = ordered_json::parse(cert_text);
    else if (sr.winner)
      doc["certificate_path"] = a.out_path;
    else
      doc["certificate"] = ordered_json();
    emit(out, doc);
  }
  return sr.success ? 0 : 2;
}

// ---- presets ---------------------------------------------------------

int do_presets(const std::string& format, std::ostream& out) {
  ordered_json arr = ordered_json::array();
  for (const auto& name : preset_names()) {
    RatioConfig cfg = preset(name);
    SweepReport rep = sweep(cfg, SweepMode::Exhaustive());
    if (format == "table") {
      out << name << ": M=" << rep.m_found;
      for (std::size_t i = 0; i < rep.crossings.size(); ++i)
        out << ", c_" << (i + 1) << " = " << rep.crossings[i].to_string();
      out << ", c = " << rep.c_exact->to_string() << "\n";
      continue;
    }
    ordered_json doc;
    doc["name"] = name;
    doc["m"] = rep.m_found;
    ordered_json crs = ordered_json::array();
    for (const auto& c : rep.crossings) crs.push_back(c.to_string());
    doc["crossings"] = crs;
    doc["c"] = rep.c_exact->to_string();
    arr.push_back(doc);
  }
  if (format != "table") emit(out, arr);
  return 0;
}

}  // namespace

RunOutcome run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  RunOutcome outcome;

  CLI::App app{"interval prime certification toolkit", "primecert"};
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* c = app.add_subcommand("certify", "decide the interval condition for a prime set");
  c->add_option("--k", ca.k, "interval multiplier k")->required();
  c->add_option("--primes", ca.primes, "comma-separated prime set")->required();
  c->add_option("--scan-limit", ca.scan_limit, "starting bounded scan limit D");
  c->add_option("--max-scan", ca.max_scan, "largest D the scan may extend to");
  c->add_flag("--exhaustive", ca.exhaustive, "force a full-period sweep");
  c->add_option("--theta-bound", ca.theta, "primorial bound base, 4 or 3.4");
  c->add_option("--threads", ca.threads, "worker threads");
  c->add_option("--out", ca.out_path, "write the certificate to this file");
  c->add_option("--format", ca.format)->check(CLI::IsMember({"json", "table"}));

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "recheck a certificate file");
  v->add_option("certificate", va.path, "certificate JSON file")->required();
  v->add_option("--threads", va.threads, "worker threads");
  v->add_option("--format", va.format)->check(CLI::IsMember({"json", "table"}));

  SweepArgs sa;
  auto* s = app.add_subcommand("sweep", "scan G for first level crossings");
  s->add_option("--k", sa.k, "interval multiplier k");
  s->add_option("--primes", sa.primes, "comma-separated prime set");
  s->add_option("--preset", sa.preset_name, "named classical configuration");
  s->add_option("--scan-limit", sa.scan_limit, "bounded scan limit D");
  s->add_flag("--exhaustive", sa.exhaustive, "force a full-period sweep");
  s->add_option("--threads", sa.threads, "worker threads");
  s->add_option("--format", sa.format)->check(CLI::IsMember({"json", "table", "csv"}));

  LemmaArgs la;
  auto* l = app.add_subcommand("lemmas", "machine-check the supporting inequalities");
  l->add_option("--pi-max", la.pi_max, "check 3*pi(x) <= x up to here");
  l->add_option("--primorial-max", la.primorial_max, "check theta bounds up to here");
  l->add_option("--stirling-max", la.stirling_max, "check factorial bounds up to here");
  l->add_option("--legendre-max", la.legendre_max, "cross-check valuations for n up to here");
  l->add_option("--legendre-p-max", la.legendre_p_max, "largest prime for the valuation check");
  l->add_option("--format", la.format)->check(CLI::IsMember({"json", "table"}));

  CountArgs na;
  auto* n = app.add_subcommand("count", "count primes in (k*a*n, (k+1)*a*n]");
  n->add_option("--k", na.k, "interval multiplier k")->required();
  n->add_option("--n", na.n, "scale point n")->required();
  n->add_option("--a", na.a, "extra scale factor a");

  SearchArgs xa;
  auto* x = app.add_subcommand("search", "augment a prime set until the condition holds");
  x->add_option("--k", xa.k, "interval multiplier k")->required();
  x->add_option("--primes", xa.primes, "seed prime set")->required();
  x->add_option("--max-depth", xa.max_depth, "augmentations allowed beyond the seed");
  x->add_option("--max-nodes", xa.max_nodes, "total sets evaluated");
  x->add_option("--max-primes", xa.max_primes, "largest set size");
  x->add_option("--trial-scan", xa.trial_scan, "probe scan limit for candidate scoring");
  x->add_option("--max-scan", xa.max_scan, "scan limit for full evaluations");
  x->add_option("--theta-bound", xa.theta, "primorial bound base, 4 or 3.4");
  x->add_option("--threads", xa.threads, "worker threads");
  x->add_option("--out", xa.out_path, "write the winning certificate here");
  x->add_option("--trace", xa.trace_path, "write one JSON line per evaluated set");
  x->add_option("--format", xa.format)->check(CLI::IsMember({"json", "table"}));

  std::string pf = "json";
  auto* p = app.add_subcommand("presets", "evaluate the named classical configurations");
  p->add_option("--format", pf)->check(CLI::IsMember({"json", "table"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    outcome.exit_code = rc == 0 ? 0 : 3;
    return outcome;
  }

  try {
    if (app.got_subcommand(c)) outcome.exit_code = do_certify(ca, out, outcome);
    else if (app.got_subcommand(v)) outcome.exit_code = do_verify(va, out);
    else if (app.got_subcommand(s)) outcome.exit_code = do_sweep(sa, out);
    else if (app.got_subcommand(l)) outcome.exit_code = do_lemmas(la, out);
    else if (app.got_subcommand(n)) outcome.exit_code = do_count(na, out);
    else if (app.got_subcommand(x)) outcome.exit_code = do_search(xa, out, outcome);
    else if (app.got_subcommand(p)) outcome.exit_code = do_presets(pf, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    outcome.exit_code = 3;
  } catch (const budget_error& e) {
    err << "budget: " << e.what() << "\n";
    outcome.exit_code = 2;
  } catch (const malformed_certificate& e) {
    err << "malformed certificate: " << e.what() << "\n";
    outcome.exit_code = 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    outcome.exit_code = 3;
  }
  return outcome;
}

}  // namespace primecert::cli
