#include "primecert/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "primecert/errors.hpp"

namespace primecert {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* kFieldOrder[] = {"version",     "k",          "primes",  "Q",
                             "phiQ",        "primorial_bound",        "scan_limit_D",
                             "exhaustive",  "thresholds", "m_found", "m_cap",
                             "c_upper",     "lhs",        "rhs",     "verdict",
                             "generator"};

[[noreturn]] void bad(const std::string& what) { throw malformed_certificate(what); }

const ordered_json& field(const ordered_json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field: ") + name);
  return *it;
}

std::string get_string(const ordered_json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) bad(std::string("field must be a string: ") + name);
  return v.get<std::string>();
}

std::int64_t parse_i64_str(const std::string& s, const char* name) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) bad(std::string("field is not an integer: ") + name);
    return v;
  } catch (const std::exception&) {
    bad(std::string("field is not an integer: ") + name);
  }
}

Integer parse_integer(const std::string& s, const char* name) {
  try {
    return Integer(s);
  } catch (const std::invalid_argument&) {
    bad(std::string("field is not an integer: ") + name);
  }
}

Rational parse_rational(const std::string& s, const char* name) {
  try {
    return Rational::from_string(s);
  } catch (const std::invalid_argument&) {
    bad(std::string("field is not a rational: ") + name);
  }
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  ordered_json j;
  j["version"] = cert.version;
  j["k"] = cert.k;
  j["primes"] = cert.primes;
  j["Q"] = cert.Q.get_str();
  j["phiQ"] = cert.phiQ.get_str();
  j["primorial_bound"] = {{"C", cert.C.to_string()}, {"beta", cert.beta.to_string()}};
  j["scan_limit_D"] = std::to_string(cert.scan_limit_D);
  j["exhaustive"] = cert.exhaustive;
  ordered_json th = ordered_json::array();
  for (std::int64_t d : cert.thresholds) th.push_back(std::to_string(d));
  j["thresholds"] = th;
  j["m_found"] = cert.m_found;
  j["m_cap"] = cert.m_cap.get_str();
  j["c_upper"] = cert.c_upper.to_string();
  j["lhs"] = {{"lo", cert.lhs_lo}, {"hi", cert.lhs_hi}};
  j["rhs"] = {{"lo", cert.rhs_lo}, {"hi", cert.rhs_hi}};
  j["verdict"] = cert.verdict;
  j["generator"] = cert.generator;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("not valid JSON");
  if (!j.is_object()) bad("certificate must be a JSON object");

  // field order is part of the format
  {
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      if (i >= std::size(kFieldOrder)) bad("unexpected field: " + it.key());
      if (it.key() != kFieldOrder[i])
        bad("field out of order or unknown: " + it.key());
    }
    if (i != std::size(kFieldOrder)) bad("missing field: " + std::string(kFieldOrder[i]));
  }

  const auto& jver = field(j, "version");
  if (!jver.is_number_integer()) bad("field must be an integer: version");
  if (jver.get<int>() != 1) bad("unknown version");

  Certificate cert;
  cert.version = 1;
  const auto& jk = field(j, "k");
  if (!jk.is_number_integer()) bad("field must be an integer: k");
  cert.k = jk.get<std::int64_t>();

  const auto& jp = field(j, "primes");
  if (!jp.is_array()) bad("field must be an array: primes");
  for (const auto& v : jp) {
    if (!v.is_number_unsigned() && !v.is_number_integer()) bad("primes entries must be integers");
    long long pv = v.get<long long>();
    if (pv < 2) bad("primes entries must be >= 2");
    cert.primes.push_back((std::uint64_t)pv);
  }

  cert.Q = parse_integer(get_string(j, "Q"), "Q");
  cert.phiQ = parse_integer(get_string(j, "phiQ"), "phiQ");

  const auto& jpb = field(j, "primorial_bound");
  if (!jpb.is_object() || jpb.size() != 2 || jpb.begin().key() != "C" ||
      std::next(jpb.begin()).key() != "beta")
    bad("primorial_bound must hold C and beta in order");
  if (!jpb["C"].is_string() || !jpb["beta"].is_string())
    bad("primorial_bound values must be strings");
  cert.C = parse_rational(jpb["C"].get<std::string>(), "C");
  cert.beta = parse_rational(jpb["beta"].get<std::string>(), "beta");

  cert.scan_limit_D = parse_i64_str(get_string(j, "scan_limit_D"), "scan_limit_D");
  const auto& jex = field(j, "exhaustive");
  if (!jex.is_boolean()) bad("field must be a boolean: exhaustive");
  cert.exhaustive = jex.get<bool>();

  const auto& jth = field(j, "thresholds");
  if (!jth.is_array()) bad("field must be an array: thresholds");
  for (const auto& v : jth) {
    if (!v.is_string()) bad("thresholds entries must be strings");
    cert.thresholds.push_back(parse_i64_str(v.get<std::string>(), "thresholds"));
  }

  const auto& jm = field(j, "m_found");
  if (!jm.is_number_integer()) bad("field must be an integer: m_found");
  cert.m_found = jm.get<int>();
  cert.m_cap = parse_integer(get_string(j, "m_cap"), "m_cap");
  cert.c_upper = parse_rational(get_string(j, "c_upper"), "c_upper");

  for (auto [name, lo, hi] : {std::tuple<const char*, std::string*, std::string*>
                                  {"lhs", &cert.lhs_lo, &cert.lhs_hi},
                              {"rhs", &cert.rhs_lo, &cert.rhs_hi}}) {
    const auto& je = field(j, name);
    if (!je.is_object() || je.size() != 2 || je.begin().key() != "lo" ||
        std::next(je.begin()).key() != "hi")
      bad(std::string(name) + " must hold lo and hi in order");
    if (!je["lo"].is_string() || !je["hi"].is_string())
      bad(std::string(name) + " endpoints must be strings");
    *lo = je["lo"].get<std::string>();
    *hi = je["hi"].get<std::string>();
    parse_rational(*lo, name);  // syntax check here; semantics in verify
    parse_rational(*hi, name);
  }

  cert.verdict = get_string(j, "verdict");
  cert.generator = get_string(j, "generator");
  return cert;
}

VerifyOutcome verify_certificate_json(const std::string& text, int threads) {
  return verify_certificate(certificate_from_json(text), threads);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
    f.write(content.data(), (std::streamsize)content.size());
    if (!f.good()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace primecert
