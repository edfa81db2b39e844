#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli.hpp"
#include "primecert/certify.hpp"
#include "primecert/json_io.hpp"

using namespace primecert;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err, report_path;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  auto outcome = cli::run(args, out, err);
  return {outcome.exit_code, out.str(), err.str(), outcome.report_path};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/primecert_test_" + name) {
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("count prints the bare interval count") {
  Result r = run_cli({"count", "--k", "3", "--n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  Result r15 = run_cli({"count", "--k", "15", "--n", "10"});
  CHECK(r15.out == "2\n");
}

TEST_CASE("presets report the classical constants") {
  Result r = run_cli({"presets"});
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 4);
  auto find = [&](const std::string& name) -> json {
    for (const auto& e : doc)
      if (e["name"] == name) return e;
    REQUIRE(false);
    return {};
  };
  CHECK(find("erdos")["c"] == "2/3");
  CHECK(find("erdos")["m"] == 1);
  CHECK(find("erdos")["crossings"][0] == "3/2");
  CHECK(find("bachraoui")["c"] == "6/7");
  CHECK(find("sainose")["c"] == "2");
  CHECK(find("balliet4")["c"] == "30/23");
}

TEST_CASE("certify emits verdicts, exit codes, and reference warnings") {
  Result holds = run_cli({"certify", "--k", "6", "--primes", "2,3,5"});
  CHECK(holds.code == 0);
  json doc = json::parse(holds.out);
  CHECK(doc["verdict"] == "holds");
  CHECK(doc["exhaustive"] == true);
  CHECK(doc["certificate"]["k"] == 6);
  REQUIRE(doc["warnings"].size() == 1);
  CHECK(doc["warnings"][0]["field"] == "d_1");
  CHECK(doc["warnings"][0]["computed"] == "19");
  CHECK(doc["warnings"][0]["published"] == "13");

  Result fails = run_cli({"certify", "--k", "5", "--primes", "2,3,5"});
  CHECK(fails.code == 1);
  CHECK(json::parse(fails.out)["verdict"] == "condition-false");

  Result sharp = run_cli(
      {"certify", "--k", "5", "--primes", "2,3,5", "--theta-bound", "3.4"});
  CHECK(sharp.code == 0);

  Result undecided = run_cli({"certify", "--k", "5", "--primes", "2,3,5", "--scan-limit",
                              "20", "--max-scan", "20"});
  CHECK(undecided.code == 2);
}

TEST_CASE("the CLI writes the same bytes the library produces") {
  TempFile tmp("cli_vs_lib.json");
  Result r = run_cli({"certify", "--k", "6", "--primes", "2,3,5", "--out", tmp.path});
  CHECK(r.code == 0);
  CHECK(r.report_path == tmp.path);
  json doc = json::parse(r.out);
  CHECK(doc["certificate_path"] == tmp.path);

  CertifyResult direct = certify(6, make_prime_set({2, 3, 5}), {});
  CHECK(slurp(tmp.path) == certificate_to_json(direct.cert));
}

TEST_CASE("verify round-trips and rejects tampering through the CLI") {
  TempFile tmp("verify_roundtrip.json");
  run_cli({"certify", "--k", "6", "--primes", "2,3,5", "--out", tmp.path});

  Result ok = run_cli({"verify", tmp.path});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["accepted"] == true);

  // tamper: shift the first threshold
  std::string text = slurp(tmp.path);
  auto pos = text.find("\"19\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 4, "\"18\"");
  TempFile bad("verify_tampered.json");
  {
    std::ofstream o(bad.path, std::ios::binary);
    o << text;
  }
  Result rej = run_cli({"verify", bad.path});
  CHECK(rej.code == 1);
  CHECK(json::parse(rej.out)["accepted"] == false);

  TempFile garbage("verify_garbage.json");
  {
    std::ofstream o(garbage.path, std::ios::binary);
    o << "{\"version\": 9}";
  }
  CHECK(run_cli({"verify", garbage.path}).code == 3);
  CHECK(run_cli({"verify", "/nonexistent/nope.json"}).code == 3);
}

TEST_CASE("sweep csv has the pinned header and exact reciprocal columns") {
  Result r = run_cli({"sweep", "--k", "5", "--primes", "2,3,5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "level,d,c_reciprocal_num,c_reciprocal_den\n"
        "1,13,180,13\n"
        "2,49,180,49\n");
}

TEST_CASE("sweep json lists crossings exactly") {
  Result r = run_cli({"sweep", "--preset", "erdos"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["m_found"] == 1);
  CHECK(doc["crossings"][0] == "3/2");
  CHECK(doc["c_exact"] == "2/3");
  CHECK(doc["exhaustive"] == true);
}

TEST_CASE("underscored integers parse") {
  Result r = run_cli({"certify", "--k", "5", "--primes", "2,3,5", "--scan-limit",
                      "1_000", "--max-scan", "1_000"});
  // D = 1000 spans the whole period for k=5 {2,3,5}: exhaustive, false
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["exhaustive"] == true);
}

TEST_CASE("usage errors exit 3") {
  CHECK(run_cli({"certify", "--k", "5"}).code == 3);                  // missing primes
  CHECK(run_cli({"nonsense"}).code == 3);                             // unknown command
  CHECK(run_cli({"certify", "--k", "x", "--primes", "2"}).code == 3); // bad integer
  CHECK(run_cli({"certify", "--k", "5", "--primes", "2,3,5", "--theta-bound",
                 "5"}).code == 3);  // unsupported base
  CHECK(run_cli({"count", "--k", "3", "--n", "10", "--format", "csv"}).code == 3);
  CHECK(run_cli({}).code == 3);                                       // no subcommand
}

TEST_CASE("search drives the library and writes traces") {
  TempFile trace("search_trace.jsonl");
  TempFile cert("search_cert.json");
  Result r = run_cli({"search", "--k", "5", "--primes", "2,3,5", "--trace", trace.path,
                      "--out", cert.path});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["success"] == true);
  CHECK(doc["primes"] == json::array({2, 3, 5, 13}));

  // the trace is one JSON object per line
  std::istringstream lines(slurp(trace.path));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    json row = json::parse(line);
    CHECK(row.contains("verdict"));
    ++count;
  }
  CHECK(count == (int)doc["nodes_evaluated"]);

  // the winning certificate verifies
  CHECK(run_cli({"verify", cert.path}).code == 0);
}

TEST_CASE("lemma suites run at reduced ranges") {
  Result r = run_cli({"lemmas", "--pi-max", "100000", "--primorial-max", "20000",
                      "--stirling-max", "300", "--legendre-max", "200"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["ok"] == true);
  CHECK(doc["pi"]["ok"] == true);
  REQUIRE(doc["primorial"].size() == 2);
  CHECK(doc["primorial"][0]["C"] == "1/8");
  CHECK(doc["primorial"][1]["beta"] == "17/5");
  CHECK(doc["stirling"]["equality_only_at_one"] == true);
}

TEST_CASE("table format carries timing, json never does") {
  Result t = run_cli({"certify", "--k", "2", "--primes", "2", "--format", "table"});
  CHECK(t.out.find("elapsed:") != std::string::npos);
  Result j = run_cli({"certify", "--k", "2", "--primes", "2"});
  CHECK(j.out.find("elapsed") == std::string::npos);
  json doc = json::parse(j.out);  // stdout is one clean JSON document
  CHECK(doc.contains("verdict"));
}
