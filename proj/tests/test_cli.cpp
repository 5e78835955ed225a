// SPDX-License-Identifier: MIT
//
// End-to-end checks of the command-line binary: every test spawns the real
// executable (path injected at compile time) and inspects exit codes plus
// stdout/stderr, exactly as a shell user would see them.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "mmscopies/instances.hpp"
#include "mmscopies/json_io.hpp"
#include "mmscopies/mms.hpp"

using namespace mmscopies;

namespace {

struct RunResult {
  int exitCode = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + MMSCOPIES_CLI_PATH + "' " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
  int status = pclose(pipe);
  res.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const std::string& scratch_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/mmscli_XXXXXX";
    char* made = mkdtemp(tmpl);
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

std::string scratch_path(const std::string& name) { return scratch_dir() + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gen emits a parseable instance with the requested shape") {
    RunResult res = run_cli("gen --kind random-additive --n 3 --m 8 --seed 5");
    REQUIRE(res.exitCode == 0);
    Json j = Json::parse(res.output);
    ParsedInstance pi = instance_from_json(j);
    REQUIRE_FALSE(pi.isChores);
    CHECK(pi.goods.n == 3);
    CHECK(pi.goods.m == 8);
    CHECK(pi.goods.kind == ValuationKind::Additive);
  }

  TEST_CASE("gen --out writes the same bytes the stdout path prints") {
    std::string path = scratch_path("gen_roundtrip.json");
    RunResult toFile = run_cli("gen --kind random-kdemand --n 3 --m 7 --k 2 --seed 9 --out '" +
                               path + "'");
    REQUIRE(toFile.exitCode == 0);
    RunResult toStdout = run_cli("gen --kind random-kdemand --n 3 --m 7 --k 2 --seed 9");
    REQUIRE(toStdout.exitCode == 0);
    CHECK(Json::parse(slurp(path)) == Json::parse(toStdout.output));
  }

  TEST_CASE("mms reports the exact share for a hand-checked instance") {
    Instance inst;
    inst.kind = ValuationKind::Additive;
    inst.n = 1;
    inst.m = 4;
    inst.values = {{Rational(3), Rational(3), Rational(2), Rational(2)}};
    std::string path = scratch_path("mms_hand.json");
    save_json_file(path, instance_to_json(inst));
    RunResult res = run_cli("mms --instance '" + path + "' --agent 0 --d 2");
    REQUIRE(res.exitCode == 0);
    Json j = Json::parse(res.output);
    CHECK(j.at("value").get<std::string>() == "5");
    CHECK(j.at("partition").size() == 2);
    RunResult unpruned = run_cli("mms --instance '" + path + "' --agent 0 --d 2 --unpruned");
    REQUIRE(unpruned.exitCode == 0);
    CHECK(Json::parse(unpruned.output).at("value").get<std::string>() == "5");
  }

  TEST_CASE("solve writes byte-identical allocations on repeated runs") {
    std::string instPath = scratch_path("det_inst.json");
    REQUIRE(run_cli("gen --kind random-additive --n 4 --m 9 --seed 7 --out '" + instPath +
                    "'").exitCode == 0);
    std::string a1 = scratch_path("det_a1.json");
    std::string a2 = scratch_path("det_a2.json");
    RunResult r1 = run_cli("solve --instance '" + instPath +
                           "' --algorithm match-n-fill --out '" + a1 + "'");
    RunResult r2 = run_cli("solve --instance '" + instPath +
                           "' --algorithm match-n-fill --out '" + a2 + "'");
    REQUIRE(r1.exitCode == 0);
    REQUIRE(r2.exitCode == 0);
    CHECK(slurp(a1) == slurp(a2));
    CHECK(Json::parse(r1.output).at("report").at("all_ok").get<bool>());
  }

  TEST_CASE("solve replays a scripted bag fill and logs three duplications") {
    std::string instPath = scratch_path("worked.json");
    REQUIRE(run_cli("gen --kind worked-example --out '" + instPath + "'").exitCode == 0);
    RunResult res = run_cli("solve --instance '" + instPath +
                            "' --algorithm bagfill --order '3,6,8,0,1,9,11,c6,4,2,7' "
                            "--choices '0,1,3,2' --emit-trace");
    REQUIRE(res.exitCode == 0);
    Json j = Json::parse(res.output);
    CHECK(j.at("report").at("all_ok").get<bool>());
    CHECK(j.at("report").at("copies").at("total_extra").get<int>() == 4);
    CHECK(j.at("report").at("copies").at("max_per_good_extra").get<int>() == 2);
    Json closerLog = j.at("trace").at("closer_log");
    REQUIRE(closerLog.size() == 3);
    CHECK(closerLog == Json::parse("[8,1,6]"));
  }

  TEST_CASE("verify accepts a copy-free split at full shares and rejects a broken one") {
    Instance inst;
    inst.kind = ValuationKind::Additive;
    inst.n = 2;
    inst.m = 2;
    inst.values = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
    std::string instPath = scratch_path("verify_inst.json");
    save_json_file(instPath, instance_to_json(inst));

    CopyAllocation fair;
    fair.bundles = {{0}, {1}};
    std::string fairPath = scratch_path("verify_fair.json");
    save_json_file(fairPath, allocation_to_json(fair));
    RunResult ok = run_cli("verify --instance '" + instPath + "' --allocation '" + fairPath +
                           "' --alpha 1");
    CHECK(ok.exitCode == 0);
    CHECK(Json::parse(ok.output).at("all_ok").get<bool>());

    CopyAllocation lopsided;
    lopsided.bundles = {{}, {0, 1}};
    std::string badPath = scratch_path("verify_bad.json");
    save_json_file(badPath, allocation_to_json(lopsided));
    RunResult bad = run_cli("verify --instance '" + instPath + "' --allocation '" + badPath +
                            "' --alpha 1");
    CHECK(bad.exitCode == 1);
    CHECK_FALSE(Json::parse(bad.output).at("all_ok").get<bool>());
  }

  TEST_CASE("usage problems exit with 2") {
    CHECK(run_cli("frobnicate").exitCode == 2);
    CHECK(run_cli("mms --agent 0").exitCode == 2);  // missing --instance and --d
    std::string instPath = scratch_path("cap_inst.json");
    REQUIRE(run_cli("gen --kind random-additive --n 4 --m 9 --seed 11 --out '" + instPath +
                    "'").exitCode == 0);
    RunResult overCap = run_cli("solve --instance '" + instPath +
                                "' --algorithm rr67 --alpha 9/10");
    CHECK(overCap.exitCode == 2);
    CHECK(overCap.output.find("exceeds the cap") != std::string::npos);
    CHECK(overCap.output.find("6/7") != std::string::npos);
  }

  TEST_CASE("bench prints a sorted CSV with one row per trial") {
    RunResult res = run_cli(
        "bench --family random-additive --n 3 --m 6 --trials 5 --seed 3 "
        "--algorithm match-n-fill");
    REQUIRE(res.exitCode == 0);
    std::istringstream lines(res.output);
    std::string header;
    REQUIRE(std::getline(lines, header));
    CHECK(header == "family,n,m,seed,algorithm,alpha,min_ratio,copies_t,max_k,ms");
    std::vector<std::string> rows;
    for (std::string row; std::getline(lines, row);) rows.push_back(row);
    REQUIRE(rows.size() == 5);
    long prevSeed = -1;
    for (const auto& row : rows) {
      CHECK(row.rfind("random-additive,3,6,", 0) == 0);
      CHECK(count_lines(row) == 0);
      std::istringstream fields(row);
      std::vector<std::string> cols;
      for (std::string col; std::getline(fields, col, ',');) cols.push_back(col);
      REQUIRE(cols.size() == 10);
      long seed = std::stol(cols[3]);
      CHECK(seed > prevSeed);
      prevSeed = seed;
      CHECK(cols[4] == "match-n-fill");
    }
  }

  TEST_CASE("capped-demand pipeline works end to end from the shell") {
    std::string instPath = scratch_path("twodemand.json");
    REQUIRE(run_cli("gen --kind two-demand --n 3 --eps 1/10 --out '" + instPath +
                    "'").exitCode == 0);
    RunResult res = run_cli("solve --instance '" + instPath + "' --algorithm kdemand");
    REQUIRE(res.exitCode == 0);
    Json j = Json::parse(res.output);
    CHECK(j.at("report").at("all_ok").get<bool>());
    CHECK(j.at("report").at("copies").at("total_extra").get<int>() <= 2);
  }

  TEST_CASE("chore solving works end to end from the shell") {
    std::string instPath = scratch_path("chores.json");
    REQUIRE(run_cli("gen --kind random-chores --n 3 --m 7 --seed 2 --out '" + instPath +
                    "'").exitCode == 0);
    RunResult res = run_cli("solve --instance '" + instPath + "' --algorithm chores");
    REQUIRE(res.exitCode == 0);
    Json j = Json::parse(res.output);
    CHECK(j.at("report").at("all_ok").get<bool>());
    RunResult mismatch = run_cli("solve --instance '" + instPath + "' --algorithm match-n-fill");
    CHECK(mismatch.exitCode == 2);
  }
}
