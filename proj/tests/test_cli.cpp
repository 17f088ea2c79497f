#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cubecover/cli.hpp"
#include "cubecover/json_io.hpp"

using namespace cubecover;
using cubecover::cli::dispatch;

namespace {

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("verify: degenerate cover fails the variable condition with exit 1") {
  RunResult r = run({"verify", "--input", fx("degenerate2.json")});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["essential"] == false);
  CHECK(j["e1"]["holds"] == true);
  CHECK(j["e2"]["holds"] == false);
  CHECK(j["e2"]["missing_variables"] == json::array({1}));
  CHECK(j["e3"]["holds"] == true);
}

TEST_CASE("verify: essential fixture exits 0") {
  RunResult r = run({"verify", "--input", fx("diag2.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["essential"] == true);
  CHECK(j["sparsity"]["holds"] == true);
}

TEST_CASE("verify: uncovered witnesses are listed up to the limit") {
  RunResult r = run({"verify", "--input", fx("halfplane2.json"), "--limit", "4"});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["e1"]["holds"] == false);
  CHECK(j["uncovered"].size() == 2);
}

TEST_CASE("bounds anchors") {
  RunResult r = run({"bounds", "--n", "6"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["lr_lower"] == 3.0);
  CHECK(j["asymptotic_flags"]["yy_lower"] == true);
  CHECK(j["asymptotic_flags"]["lr_lower"] == false);

  RunResult r2 = run({"bounds", "--n", "2"});
  CHECK(json::parse(r2.out)["lr_lower"] == 2.0);
}

TEST_CASE("oracle emits the minimum and a witness in the cover format") {
  RunResult r = run({"oracle", "--n", "2"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["e"] == 2);
  Cover witness = cover_from_json(j["witness_cover"]);
  CHECK(witness.n == 2);
  CHECK(witness.k() == 2);
}

TEST_CASE("bang solves the fixture instance") {
  RunResult r = run({"bang", "--input", fx("bang1.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["epsilon"].size() == 2);
}

TEST_CASE("decompose emits the partition plus the checker verdict") {
  RunResult r = run({"decompose", "--input", fx("halfplane2.json"), "--params",
                     fx("params_small.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["checker"]["pass"] == true);
  CHECK(j["N1"].size() + j["N2"].size() + j["N3"].size() == 2);
  CHECK(j["K3"] == json::array({0}));
}

TEST_CASE("find-uncovered exits 0 with a vertex on the fixture miss") {
  RunResult r = run({"find-uncovered", "--input", fx("halfplane2.json"), "--params",
                     fx("params_small.json")});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["status"] == "found");
  CHECK(j["vertex"].size() == 2);
  CHECK(j["certificate"].size() == 1);
}

TEST_CASE("find-uncovered reports an exhausted budget with exit 3") {
  // seed 2 rejects its single completion draw under max_tries = 1
  RunResult r = run({"--seed", "2", "find-uncovered", "--input", fx("halfplane2.json"),
                     "--params", fx("params_tight.json")});
  CHECK(r.code == 3);
  json j = json::parse(r.out);
  CHECK(j["status"] == "phase_failure");
  CHECK(j["failed_phase"] == "III");
  // the variance diagnostic is part of the failure report
  bool has_sigma = false;
  for (const auto& n : j["notes"]) has_sigma = has_sigma || n.get<std::string>().find("sigma_sq") == 0;
  CHECK(has_sigma);
}

TEST_CASE("find-uncovered distinguishes premise failures (exit 2)") {
  RunResult r = run({"find-uncovered", "--input", fx("diag2.json"), "--params",
                     fx("params_small.json")});
  CHECK(r.code == 2);
  json j = json::parse(r.out);
  CHECK(j["status"] == "premise_failure");
}

TEST_CASE("experiments emit exact rationals") {
  RunResult lo = run({"experiment", "lo", "--max-n", "4", "--max-entry", "2"});
  CHECK(lo.code == 0);
  json jlo = json::parse(lo.out);
  CHECK(jlo["violations"] == 0);

  RunResult anti = run({"--seed", "3", "experiment", "antichain", "--n", "6", "--trials", "5"});
  CHECK(anti.code == 0);
  json janti = json::parse(anti.out);
  CHECK(janti["trials"].size() == 5);
  CHECK(janti["sigma_sq"] == "6");

  RunResult sc = run({"experiment", "scales", "--s-list", "1", "--s-list", "2", "--s-list", "3"});
  CHECK(sc.code == 0);
  json jsc = json::parse(sc.out);
  CHECK(jsc["monotone_in_s"] == true);
}

TEST_CASE("bad inputs exit 2 with a diagnostic") {
  RunResult r = run({"verify", "--input", fx("no_such_file.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);

  RunResult u = run({"frobnicate"});
  CHECK(u.code == 2);

  RunResult flag = run({"verify", "--input", fx("diag2.json"), "--unknown-flag"});
  CHECK(flag.code == 2);
}

TEST_CASE("float tokens in cover files are rejected") {
  std::string path = "bad_float_tmp.json";
  {
    std::ofstream f(path);
    f << R"({"n":1,"planes":[{"normal":[0.5],"offset":"0"}]})";
  }
  RunResult r = run({"verify", "--input", path});
  CHECK(r.code == 2);
  std::remove(path.c_str());
}

TEST_CASE("byte-identical output across repeated runs and thread counts") {
  std::vector<std::vector<std::string>> cases = {
      {"verify", "--input", fx("degenerate2.json")},
      {"--threads", "1", "verify", "--input", fx("ess3.json")},
      {"--threads", "4", "verify", "--input", fx("ess3.json")},
      {"bounds", "--n", "100"},
      {"oracle", "--n", "3"},
      {"decompose", "--input", fx("halfplane2.json"), "--params", fx("params_small.json")},
      {"bang", "--input", fx("bang1.json")},
      {"--seed", "7", "find-uncovered", "--input", fx("halfplane2.json"), "--params",
       fx("params_small.json")},
      {"--seed", "7", "experiment", "antichain", "--n", "6", "--trials", "4"},
  };
  for (const auto& argv : cases) {
    RunResult a = run(argv);
    RunResult b = run(argv);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  // thread count must not change the report
  RunResult t1 = run({"--threads", "1", "verify", "--input", fx("ess3.json")});
  RunResult t4 = run({"--threads", "4", "verify", "--input", fx("ess3.json")});
  CHECK(t1.out == t4.out);
}
