#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "primecert/certify.hpp"
#include "primecert/json_io.hpp"
#include "primecert/published.hpp"
#include "primecert/ratio_config.hpp"

using namespace primecert;
using primecert::test::oracle_ln;

namespace {

CertifyResult quick_certify(std::int64_t k, std::vector<std::uint64_t> primes,
                            CertifyOptions opt = {}) {
  return certify(k, make_prime_set(primes), opt);
}

// enclosure from stored 6-decimal strings
Enclosure stored(const std::string& lo, const std::string& hi) {
  return Enclosure(Rational::from_string(lo), Rational::from_string(hi));
}

}  // namespace

TEST_CASE("k=2 with {2} holds") {
  CertifyResult r = quick_certify(2, {2});
  CHECK(r.cert.verdict == "holds");
  CHECK(r.cert.exhaustive);
  CHECK(r.cert.thresholds == std::vector<std::int64_t>{7});
  // RHS = (6/7) ln 4
  Enclosure rhs_ref = oracle_ln(Rational(4)).scale(Rational(6, 7));
  CHECK(stored(r.cert.rhs_lo, r.cert.rhs_hi).contains(rhs_ref.lo()));
  CHECK(r.cert.c_upper == Rational(6, 7));
}

TEST_CASE("k=6 with {2,3,5} holds with the known decimals") {
  CertifyResult r = quick_certify(6, {2, 3, 5});
  CHECK(r.cert.verdict == "holds");
  CHECK(r.cert.Q == Integer(30));
  CHECK(r.cert.phiQ == Integer(8));
  CHECK(r.cert.c_upper == Rational(13020, 817));

  // reference values through the independent log oracle
  Enclosure rhs_ref = oracle_ln(Rational(4)).scale(Rational(13020, 817));
  Enclosure lhs_ref = (oracle_ln(Rational(7)).scale(Rational(7)) -
                       oracle_ln(Rational(6)).scale(Rational(6)))
                          .scale(Rational(8));
  Enclosure rhs = stored(r.cert.rhs_lo, r.cert.rhs_hi);
  Enclosure lhs = stored(r.cert.lhs_lo, r.cert.lhs_hi);
  CHECK(rhs.contains(rhs_ref.lo()));
  CHECK(lhs.contains(lhs_ref.lo()));
  // the printed display convention reproduces the published strings
  CHECK(rhs.lo().to_decimal(3, round_dir::nearest) == "22.092");
  CHECK(lhs.lo().to_decimal(3, round_dir::nearest) == "22.967");

  // it disagrees with the published first threshold, and says so
  auto warns = compare_to_reference(r.cert, r.condition);
  REQUIRE(warns.size() == 1);
  CHECK(warns[0].field == "d_1");
  CHECK(warns[0].computed == "19");
  CHECK(warns[0].published == "13");
}

TEST_CASE("k=5 with {2,3,5} fails under (1/8,4) but holds under (1,17/5)") {
  CertifyResult r = quick_certify(5, {2, 3, 5});
  CHECK(r.cert.verdict == "condition-false");
  CHECK(r.cert.c_upper == Rational(11160, 637));
  CHECK(compare_to_reference(r.cert, r.condition).empty());

  CertifyOptions sharp;
  sharp.C = Rational(1);
  sharp.beta = Rational(17, 5);
  CertifyResult r2 = quick_certify(5, {2, 3, 5}, sharp);
  CHECK(r2.cert.verdict == "holds");
  // RHS = (11160/637) ln(17/5), printed 21.440
  Enclosure rhs = stored(r2.cert.rhs_lo, r2.cert.rhs_hi);
  CHECK(rhs.lo().to_decimal(3, round_dir::nearest) == "21.440");
}

TEST_CASE("k=5 with {2,3,5,13} holds and matches the printed displays") {
  CertifyResult r = quick_certify(5, {2, 3, 5, 13});
  CHECK(r.cert.verdict == "holds");
  CHECK(r.cert.thresholds == std::vector<std::int64_t>{19, 49, 1309});
  CHECK(compare_to_reference(r.cert, r.condition).empty());
  CHECK(stored(r.cert.lhs_lo, r.cert.lhs_hi).lo().to_decimal(3, round_dir::nearest) ==
        "259.523");
  CHECK(stored(r.cert.rhs_lo, r.cert.rhs_hi).lo().to_decimal(3, round_dir::nearest) ==
        "239.414");
}

TEST_CASE("bounded mode stays sound: undecided rather than false") {
  // cutting the k=5 {2,3,5} scan below d_2 = 49 inflates c_upper; the
  // verdict must be undecided, never condition-false
  CertifyOptions opt;
  opt.mode = CertifyOptions::Mode::bounded;
  opt.initial_D = 20;
  opt.max_D = 20;
  CertifyResult r = quick_certify(5, {2, 3, 5}, opt);
  CHECK_FALSE(r.cert.exhaustive);
  CHECK(r.cert.verdict == "undecided");
  // the tail term only ever enlarges c_upper
  CHECK(r.cert.c_upper > Rational(11160, 637));
}

TEST_CASE("bounded scans extend until decidable") {
  CertifyOptions opt;
  opt.mode = CertifyOptions::Mode::bounded;
  opt.initial_D = 20;
  opt.max_D = 4000;
  CertifyResult r = quick_certify(6, {2, 3, 5}, opt);
  // D doubles until the verdict settles; 6's period is small enough
  // that the scan upgrades to exhaustive on the way
  CHECK(r.cert.verdict == "holds");
}

TEST_CASE("certificates round-trip through JSON byte-identically") {
  CertifyResult r = quick_certify(6, {2, 3, 5});
  std::string text = certificate_to_json(r.cert);
  Certificate back = certificate_from_json(text);
  CHECK(certificate_to_json(back) == text);
  CHECK(back.verdict == r.cert.verdict);
  CHECK(back.Q == r.cert.Q);
  CHECK(back.c_upper == r.cert.c_upper);
  CHECK(back.thresholds == r.cert.thresholds);
}

TEST_CASE("verify accepts generated certificates") {
  for (auto [k, primes] : std::vector<std::pair<std::int64_t, std::vector<std::uint64_t>>>{
           {2, {2}}, {3, {2, 3}}, {6, {2, 3, 5}}, {5, {2, 3, 5, 13}}}) {
    CertifyResult r = certify(k, make_prime_set(primes), {});
    VerifyOutcome vo = verify_certificate(r.cert);
    INFO(vo.reason);
    CHECK(vo.accepted);
  }
  // condition-false certificates verify too: the verdict is rechecked
  CertifyResult f = quick_certify(5, {2, 3, 5});
  VerifyOutcome vo = verify_certificate(f.cert);
  INFO(vo.reason);
  CHECK(vo.accepted);
}

TEST_CASE("verify rejects tampering") {
  CertifyResult r = quick_certify(6, {2, 3, 5});

  Certificate wrong_d = r.cert;
  wrong_d.thresholds[0] -= 1;
  VerifyOutcome v1 = verify_certificate(wrong_d);
  CHECK_FALSE(v1.accepted);
  CHECK(v1.reason == "thresholds");

  Certificate wrong_verdict = quick_certify(5, {2, 3, 5}).cert;
  wrong_verdict.verdict = "holds";
  VerifyOutcome v2 = verify_certificate(wrong_verdict);
  CHECK_FALSE(v2.accepted);

  Certificate shrunk = r.cert;
  shrunk.c_upper = shrunk.c_upper - Rational(1, 100);
  VerifyOutcome v3 = verify_certificate(shrunk);
  CHECK_FALSE(v3.accepted);
  CHECK(v3.reason == "c_upper");

  Certificate wrong_q = r.cert;
  wrong_q.Q = wrong_q.Q + 1;
  CHECK_FALSE(verify_certificate(wrong_q).accepted);

  Certificate wrong_m = r.cert;
  wrong_m.m_found += 1;
  CHECK_FALSE(verify_certificate(wrong_m).accepted);
}

TEST_CASE("strict JSON parsing rejects malformed certificates") {
  CertifyResult r = quick_certify(2, {2});
  std::string text = certificate_to_json(r.cert);

  CHECK_THROWS_AS(certificate_from_json("not json"), malformed_certificate);
  CHECK_THROWS_AS(certificate_from_json("{}"), malformed_certificate);

  // version bump
  std::string v2 = text;
  v2.replace(v2.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK_THROWS_AS(certificate_from_json(v2), malformed_certificate);

  // extra field at the end
  std::string extra = text;
  extra.replace(extra.rfind("\n}"), 2, ",\n  \"note\": \"x\"\n}");
  CHECK_THROWS_AS(certificate_from_json(extra), malformed_certificate);

  // wrong type
  std::string badtype = text;
  badtype.replace(badtype.find("\"exhaustive\": true"), 18, "\"exhaustive\": \"yes\"");
  CHECK_THROWS_AS(certificate_from_json(badtype), malformed_certificate);
}

TEST_CASE("count lower bound grows and is analytically safe") {
  RatioConfig cfg = preset("erdos");
  SweepReport rep = sweep(cfg, SweepMode::Exhaustive());
  Rational C(1, 8), beta(4);

  Integer floor_n = validity_floor(cfg);
  CHECK(floor_n == Integer(648));  // sqrt(2n) >= 36

  Rational at_floor = nk_lower_bound(cfg, rep, C, beta, floor_n);
  Rational at_big = nk_lower_bound(cfg, rep, C, beta, Integer(1000000));
  CHECK(at_big > at_floor);
  CHECK(at_big >= Rational(20000));
  CHECK(at_big <= Rational(80000));  // stays below the true count scale
  CHECK_THROWS_AS(nk_lower_bound(cfg, rep, C, beta, Integer(10)), std::domain_error);
}

TEST_CASE("effective threshold delivers what it promises") {
  RatioConfig cfg = preset("erdos");
  SweepReport rep = sweep(cfg, SweepMode::Exhaustive());
  Rational C(1, 8), beta(4);

  ThresholdResult t1 = effective_threshold(cfg, rep, C, beta, Integer(1));
  CHECK(t1.n0 >= t1.floor_n);
  CHECK(nk_lower_bound(cfg, rep, C, beta, t1.n0) >= Rational(1));
  CHECK(nk_lower_bound(cfg, rep, C, beta, t1.n0 + 50) >= Rational(1));

  ThresholdResult t100 = effective_threshold(cfg, rep, C, beta, Integer(100));
  CHECK(t100.n0 >= t1.n0);
  CHECK(nk_lower_bound(cfg, rep, C, beta, t100.n0) >= Rational(100));
  if (t100.n0 > t100.floor_n) {
    CHECK(nk_lower_bound(cfg, rep, C, beta, t100.n0 - 1) < Rational(100));
  }

  // N=0 needs nothing beyond validity
  ThresholdResult t0 = effective_threshold(cfg, rep, C, beta, Integer(0));
  CHECK(t0.n0 == t0.floor_n);
}

TEST_CASE("threshold argument rejects configs whose condition fails") {
  PrimeSet set = make_prime_set({2, 3, 5});
  RatioConfig cfg = compile_prime_set(5, set);
  SweepReport rep = sweep(cfg, SweepMode::Exhaustive());
  CHECK_THROWS_AS(effective_threshold(cfg, rep, Rational(1, 8), Rational(4), Integer(1)),
                  std::domain_error);
}

TEST_CASE("prime-set certificates work under the sharper primorial base") {
  // the k=8 paper set under (1, 17/5) - a smaller case: k=7 seed + 11
  CertifyOptions sharp;
  sharp.C = Rational(1);
  sharp.beta = Rational(17, 5);
  CertifyResult r = quick_certify(7, {2, 3, 5, 7}, sharp);
  // whatever the verdict, the certificate must verify
  VerifyOutcome vo = verify_certificate(r.cert);
  INFO(vo.reason);
  CHECK(vo.accepted);
}
