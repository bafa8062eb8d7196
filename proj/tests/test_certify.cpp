#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "coxlog/certify.hpp"
#include "coxlog/textio.hpp"

using namespace coxlog;
using nlohmann::json;

namespace {

int cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"coxlog"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("suite is deterministic and parallelism invariant") {
  SuiteConfig cfg;
  cfg.type = "A1";
  json a = run_suite(cfg);
  json b = run_suite(cfg);
  CHECK(a["certificates"] == b["certificates"]);
  cfg.jobs = 4;
  json c = run_suite(cfg);
  CHECK(a["certificates"] == c["certificates"]);
  cfg.jobs = 1;
  cfg.seed = 7;
  json d = run_suite(cfg);
  CHECK(a["certificates"] != d["certificates"]);  // samples move with the seed
  CHECK(suite_passed(d));                         // verdicts do not
}

TEST_CASE("recorded certificates recheck bit-exactly") {
  for (const char* type : {"A1", "A1xA1"}) {
    SuiteConfig cfg;
    cfg.type = type;
    json suite = run_suite(cfg);
    CHECK(suite_passed(suite));
    CHECK(recheck_certificates(suite));
    // tampering with a recorded verdict must be caught
    suite["certificates"][0]["verdict"] = !suite["certificates"][0]["verdict"].get<bool>();
    CHECK(!recheck_certificates(suite));
  }
}

TEST_CASE("default suite covers the expected checks") {
  SuiteConfig cfg;
  cfg.type = "A1";
  json suite = run_suite(cfg);
  CHECK(suite["certificates"].size() >= 6);
  CHECK(suite_passed(suite));
  std::set<std::string> kinds;
  for (const json& c : suite["certificates"]) {
    kinds.insert(c["kind"].get<std::string>());
    CHECK(c["seed"] == 42);
    CHECK(c["version"] == kToolVersion);
  }
  for (const char* k : {"basis-criterion", "membership", "ord-lemma", "filtration-shift",
                        "commuting-diagram", "jacobian", "g-matrix", "t-membership"})
    CHECK(kinds.count(k));
}

TEST_CASE("generated data pins the rank-one ladder") {
  json data = generate_data("A1", -1, 1);
  CHECK(data["schema"] == 1);
  CHECK(data["rank"] == 1);
  CHECK(data["q"] == "x");
  auto vars = make_vars({"x"});
  const char* expected[] = {"(x^3)/3", "x", "(1)/(x)"};
  REQUIRE(data["families"].size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    const json& fam = data["families"][i];
    CHECK(fam["k"] == static_cast<int>(i) - 1);
    RatFunc got = parse_ratfunc(vars, fam["forms"][0][0].get<std::string>());
    CHECK(got == parse_ratfunc(vars, expected[i]));
  }
}

TEST_CASE("corrupted family fails and names the hyperplane and order") {
  SuiteConfig cfg;
  cfg.type = "B2";
  cfg.corrupt = "1,0,2";
  json suite = run_suite(cfg);
  CHECK(!suite_passed(suite));
  bool found = false;
  for (const json& c : suite["certificates"]) {
    if (c["kind"] != "membership" || c["verdict"].get<bool>()) continue;
    for (const json& m : c["witness"]["members"])
      for (const json& w : m["witnesses"])
        if (!w["ok"].get<bool>()) {
          found = true;
          CHECK(w["hyperplane"].get<std::string>().size() > 0);
          CHECK(w["hyperplane"] != "*");
          CHECK(w["ord"].get<int>() > w["bound"].get<int>());
        }
  }
  CHECK(found);
  // the derivation-side pairing snapshot predates the corruption and stays green
  for (const json& c : suite["certificates"])
    if (c["kind"] == "commuting-diagram") CHECK(c["verdict"].get<bool>());
}

TEST_CASE("report renders failures first in both formats") {
  SuiteConfig cfg;
  cfg.type = "A1";
  cfg.corrupt = "1,0,0";
  json suite = run_suite(cfg);
  std::string md = render_report(suite, "markdown");
  CHECK(md.find("constant=1") != std::string::npos);
  size_t first_row = md.find("\n| A1 |");
  REQUIRE(first_row != std::string::npos);
  size_t first_fail = md.find("**FAIL**");
  REQUIRE(first_fail != std::string::npos);
  CHECK(first_fail < md.find("| pass |"));
  CHECK(md.find("violates") != std::string::npos);

  std::string tsv = render_report(suite, "tsv");
  CHECK(tsv.rfind("arrangement\tid\tkind\tk\tverdict\tdetail\tms\n", 0) == 0);
  CHECK(tsv.find("\tFAIL\t") != std::string::npos);

  json empty;
  empty["certificates"] = json::array();
  CHECK(render_report(empty, "markdown").find("# verification report") == 0);
  CHECK(render_report(empty, "tsv").find("arrangement\t") == 0);
}

TEST_CASE("cli exit codes stay within the contract") {
  CHECK(cli({}) == 2);                                    // missing subcommand
  CHECK(cli({"frobnicate"}) == 2);                        // unknown subcommand
  CHECK(cli({"generate", "--type", "Z9", "--out", "/tmp/certify_gen_bad.json"}) == 1);
  CHECK(cli({"verify", "--type", "Z9"}) == 2);            // config error
  CHECK(cli({"verify", "--type", "A1", "--k-min", "3", "--k-max", "1"}) == 2);
  CHECK(cli({"verify", "--type", "A1", "--multiplicity", "orbit:bogus=1"}) == 2);
  CHECK(cli({"verify", "--type", "A1", "--corrupt", "junk"}) == 2);
  CHECK(cli({"report", "--certs", "/tmp/certify_missing.json"}) == 2);

  CHECK(cli({"generate", "--type", "A1", "--out", "/tmp/certify_gen.json"}) == 0);
  CHECK(cli({"verify", "--type", "A1", "--out", "/tmp/certify_suite.json"}) == 0);
  CHECK(cli({"report", "--certs", "/tmp/certify_suite.json", "--out",
             "/tmp/certify_report.md"}) == 0);
  CHECK(cli({"report", "--certs", "/tmp/certify_suite.json", "--format", "xml"}) == 2);
  CHECK(cli({"verify", "--type", "A1", "--corrupt", "1,0,0", "--out",
             "/tmp/certify_bad.json"}) == 1);

  std::remove("/tmp/certify_gen.json");
  std::remove("/tmp/certify_suite.json");
  std::remove("/tmp/certify_report.md");
  std::remove("/tmp/certify_bad.json");
}
