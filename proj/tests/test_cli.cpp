#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "catrank/cli.hpp"

using namespace catrank;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  json report;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  CliRun r{code, json(), err.str()};
  if (!out.str().empty() && out.str()[0] == '{') r.report = json::parse(out.str());
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "cli_test_" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("rank command") {
  std::string path = write_temp("susp.skel", "def a = susp(empty);\nmain = a;\n");
  CliRun r = run({"rank", path});
  CHECK(r.code == 0);
  CHECK(r.report["status"] == "ok");
  CHECK(r.report["result"]["rank"] == "1");
  std::remove(path.c_str());
}

TEST_CASE("rank of a cyclic definition reports the cycle") {
  std::string path =
      write_temp("cyc.skel", "def X = cat { objects: [x]; hom(x,x) = X; };\nmain = X;\n");
  CliRun r = run({"rank", path});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["rank"] == "no-small-rank");
  CHECK(r.report["result"]["cycle"]["cycle"][0]["def"] == "X");

  CliRun n = run({"noetherian", path});
  CHECK(n.code == 0);
  CHECK(n.report["result"]["noetherian"] == false);
  auto step = n.report["result"]["tower"]["cycle"][0];
  CHECK(step["def"] == "X");
  CHECK(step["pair"][0] == "x");
  CHECK(step["pair"][1] == "x");
  std::remove(path.c_str());
}

TEST_CASE("member command variants") {
  std::string path = write_temp("member.skel", "def a = susp(empty);\nmain = a;\n");
  CHECK(run({"member", path, "--stage", "1"}).report["result"]["member"] == false);
  CHECK(run({"member", path, "--stage", "2"}).report["result"]["member"] == true);
  CHECK(run({"member", path, "--stage", "2", "--via-homs"}).report["result"]["member"] == true);
  CHECK(run({"member", path, "--stage", "LAMBDA"}).report["result"]["member"] == true);
  CHECK(run({"member", path, "--stage", "2", "--bounded"}).report["result"]["member"] == true);

  CliRun bad = run({"member", path, "--stage", "w", "--via-homs"});
  CHECK(bad.code == 1);
  CHECK(bad.report["status"] == "error");

  CliRun both = run({"member", path, "--stage", "2", "--bounded", "--via-homs"});
  CHECK(both.code == 2);
  std::remove(path.c_str());
}

TEST_CASE("construct command round trips through rank") {
  std::string out_path = "cli_test_construct.skel";
  CliRun r = run({"construct", "w*2 + 1", "-o", out_path});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["skeleton"] == "susp(omegasusp(omegasusp(empty)))");
  CliRun rank = run({"rank", out_path});
  CHECK(rank.report["result"]["rank"] == "w*2 + 1");
  std::remove(out_path.c_str());

  CliRun bad = run({"construct", "w^2"});
  CHECK(bad.code == 1);
  CHECK(bad.report["status"] == "error");
}

TEST_CASE("fixpoint command") {
  CliRun r = run({"fixpoint", "--universe", "rank", "--schedule", "0..w*2", "--horizon", "4"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["verdict"]["no_stabilization_within_budget"] == true);

  CliRun lam = run({"fixpoint", "--universe", "rank", "--schedule", "0..w*2,LAMBDA",
                    "--horizon", "4"});
  CHECK(lam.report["result"]["verdict"]["stabilized_at"] == "LAMBDA");
  CHECK(lam.report["result"]["verdict"]["lambek"] == true);

  CliRun card = run({"fixpoint", "--universe", "card", "--functor", "1 + X", "--schedule",
                     "0..w+1", "--horizon", "12"});
  CHECK(card.report["result"]["verdict"]["stabilized_at"] == "w");

  CliRun trunc = run({"fixpoint", "--universe", "trunc", "--schedule", "0..w", "--horizon", "6"});
  CHECK(trunc.report["result"]["direction"] == "terminal");
  CHECK(trunc.report["result"]["verdict"]["stabilized_at"] == "w");

  CliRun missing = run({"fixpoint", "--universe", "card", "--schedule", "0..w"});
  CHECK(missing.code == 1);  // --functor required for card
}

TEST_CASE("fixpoint with a corpus file that uses references") {
  std::string path = write_temp(
      "corpus.skel",
      "def base = empty;\ndef s1 = susp(base);\ndef s2 = susp(s1);\nmain = s2;\n");
  CliRun r = run({"fixpoint", "--universe", "bounded", "--schedule", "0..w+1", "--horizon", "6",
                  "--corpus", path});
  CHECK(r.code == 0);
  // the corpus tops out at rank 2, so stages 3 and 4 already agree over it
  CHECK(r.report["result"]["verdict"]["stabilized_at"] == "3");
  std::remove(path.c_str());
}

TEST_CASE("check command") {
  CliRun r = run({"check", "--suite", "lemma3.4", "--cases", "50", "--seed", "9"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["pass"] == true);
  CHECK(r.report["result"]["suites"][0]["name"] == "lemma3.4");
  CHECK(r.err.find("[PASS]") != std::string::npos);

  CliRun bad = run({"check", "--suite", "nonsense"});
  CHECK(bad.code == 1);
}

TEST_CASE("check is deterministic for a fixed seed") {
  CliRun a = run({"check", "--suite", "roundtrip", "--cases", "40", "--seed", "5"});
  CliRun b = run({"check", "--suite", "roundtrip", "--cases", "40", "--seed", "5"});
  auto strip_time = [](json j) {
    for (auto& s : j["result"]["suites"]) s.erase("seconds");
    return j;
  };
  CHECK(strip_time(a.report) == strip_time(b.report));
}

TEST_CASE("all reports share the published schema") {
  std::string path = write_temp("schema.skel", "def a = susp(empty);\nmain = a;\n");
  std::vector<std::vector<std::string>> runs = {
      {"rank", path},
      {"rank", path, "--ordinal-out"},
      {"member", path, "--stage", "2"},
      {"construct", "3"},
      {"noetherian", path},
      {"fixpoint", "--universe", "trunc", "--schedule", "0..w", "--horizon", "4"},
      {"check", "--suite", "classical"},
      {"rank", "no_such_file.skel"},
  };
  for (const auto& args : runs) {
    CliRun r = run(args);
    REQUIRE(r.report.is_object());
    CHECK(r.report.contains("command"));
    CHECK(r.report["command"].is_string());
    CHECK(r.report.contains("inputs"));
    CHECK(r.report["inputs"].is_object());
    CHECK(r.report.contains("result"));
    CHECK(r.report.contains("status"));
    std::string status = r.report["status"];
    CHECK((status == "ok" || status == "error"));
    if (status == "error") {
      CHECK(r.report.contains("error"));
      CHECK(r.report["error"].contains("message"));
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"rank"}).code == 2);  // missing file argument
  CHECK(run({"member", "x.skel"}).code == 2);  // missing --stage
  CHECK(run({}).code == 2);
}

TEST_CASE("parse errors carry positions and exit with 1") {
  std::string path = write_temp("broken.skel", "def a = susp(;\n");
  CliRun r = run({"rank", path});
  CHECK(r.code == 1);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["line"] == 1);
  std::remove(path.c_str());

  std::string illegal = write_temp("illegal.skel", "def Y = coprod(Y, empty);\n");
  CliRun ri = run({"rank", illegal});
  CHECK(ri.code == 1);
  std::string msg = ri.report["error"]["message"];
  CHECK(msg.find("Y") != std::string::npos);
  std::remove(illegal.c_str());
}
