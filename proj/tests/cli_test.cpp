#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "filled/cli.hpp"

using filled::cli::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "filled");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = filled::cli::run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("filled_cli_test_" + name);
  std::filesystem::remove(p);
  return p;
}

std::vector<Json> read_lines(const std::filesystem::path& p) {
  std::vector<Json> out;
  std::ifstream f(p);
  for (std::string line; std::getline(f, line);) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST(Cli, ClassifyFilledDihedral) {
  const auto r = run({"classify", "D(22)"});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["filled"], true);
  EXPECT_EQ(j["order"], 22);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
}

TEST(Cli, ClassifyGeneralizedQuaternion) {
  const auto r = run({"classify", "Q(16)"});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["filled"], false);
  const auto chain = j["rule_chain"].get<std::vector<std::string>>();
  EXPECT_EQ(chain.back(), "generalized-quaternion");
}

TEST(Cli, WitnessDihedralThirteen) {
  const auto r = run({"witness", "dihedral", "13"});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["set"].size(), 6u);
  EXPECT_EQ(j["checks"]["product_free"], true);
  EXPECT_EQ(j["checks"]["locally_maximal"], true);
  EXPECT_EQ(j["checks"]["fills"], false);
  EXPECT_EQ(j["group_spec"], "D(26)");
  EXPECT_EQ(j["excluded_element"], "x^9");
}

// Every set printed by a command is accepted by verify as a non-filling
// locally maximal product-free set.
TEST(Cli, EmittedWitnessesReverify) {
  const std::vector<std::vector<std::string>> commands = {
      {"classify", "C(4)", "--witness"},
      {"classify", "D(20)", "--pure-search"},
      {"classify", "D(8)xC(4)", "--no-table", "--witness"},
      {"find-nfs", "D(26)"},
      {"exhaustive", "D(18)"},
      {"witness", "d44"},
      {"witness", "dihedral", "27"},
      {"witness", "esc4", "ESC4(16)", "--seed", "3"},
      {"witness", "extraspecial", "ESM(512)"},
  };
  for (const auto& cmd : commands) {
    SCOPED_TRACE(cmd.front() + " " + cmd[1]);
    const auto r = run(cmd);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = r.json();
    const Json set = j.contains("witness") ? j["witness"] : j["set"];
    ASSERT_TRUE(set.is_array());
    const auto v = run({"verify", j["group_spec"].get<std::string>(), "--set", set.dump()});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(v.json()["non_filling_lmpfs"], true);
  }
}

TEST(Cli, VerifyAcceptsIndices) {
  const auto r = run({"verify", "C(5)", "--set", "[1, 4]"});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["checks"]["product_free"], true);
  EXPECT_EQ(j["checks"]["locally_maximal"], true);
  EXPECT_EQ(j["checks"]["fills"], true);
  const auto bad = run({"verify", "C(5)", "--set", "[\"x\", \"x^2\"]"}).json();
  EXPECT_EQ(bad["checks"]["product_free"], false);
  EXPECT_TRUE(bad["checks"]["locally_maximal"].is_null());
}

TEST(Cli, InputErrors) {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"verify", "C(5)", "--set", "[\"x\","},
           {"verify", "C(5)", "--set", "{\"x\": 1}"},
           {"verify", "C(5)", "--set", "[\"nope\"]"},
           {"verify", "C(5)", "--set", "[7]"},
           {"verify", "C(5)", "--set", "[-1]"},
           {"classify", "C(0)"},
           {"classify", "D(8)xZ(2)"},
           {"classify", "C(5000)"},
           {"witness", "dihedral", "12"},
           {"witness", "extraspecial", "ESP(128)"},
           {"witness", "extraspecial", "D(8)"},
           {"witness", "esc4", "D(8)"},
           {"table", "33"},
           {"frobnicate"},
           {"classify"},
           {"classify", "C(5)", "--parallel", "0"},
           {"classify", "C(5)", "--involution-seed", "maybe"},
       }) {
    const auto r = run(cmd);
    EXPECT_EQ(r.code, 3) << cmd.front() << " " << (cmd.size() > 1 ? cmd[1] : "");
  }
  const auto parse = run({"classify", "D(8)xZ(2)"}).json();
  EXPECT_EQ(parse["error"]["kind"], "ParseError");
  EXPECT_EQ(parse["error"]["offset"], 5);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}

TEST(Cli, UndecidedExitCode) {
  const auto ex = run({"exhaustive", "(D(8)*Q(8))xC(2)"});
  EXPECT_EQ(ex.code, 2);
  EXPECT_EQ(ex.json()["filled"], "undecided");
  const auto nfs = run({"find-nfs", "EA(8)", "--max-restarts", "10"});
  EXPECT_EQ(nfs.code, 2);
  EXPECT_EQ(nfs.json()["stats"]["restarts"], 10);
  const auto cls = run({"classify", "(D(8)*Q(8))xC(2)", "--max-restarts", "5"});
  EXPECT_EQ(cls.code, 2);
  EXPECT_EQ(cls.json()["rule_chain"].back(), "undecided-at-budget");
}

TEST(Cli, ExhaustiveOptIn) {
  const auto r = run({"exhaustive", "(D(8)*Q(8))xC(2)", "--exhaustive-opt-in", "--parallel", "2"});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["filled"], true);
  EXPECT_EQ(j["rule_chain"], Json::array({"involution-restricted", "exhaustive"}));
}

TEST(Cli, Table) {
  EXPECT_EQ(run({"table", "16"}).json()["members"], Json::array({"EA(16)", "D(8)xC(2)"}));
  EXPECT_EQ(run({"table", "7"}).json()["members"], Json::array());
}

TEST(Cli, Pretty) {
  const auto r = run({"table", "32", "--pretty"});
  EXPECT_GT(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  EXPECT_EQ(r.json()["members"].size(), 2u);
}

TEST(Cli, LedgerReplay) {
  const auto path = temp_path("ledger.jsonl");
  const std::vector<std::string> cmd = {"classify", "D(40)", "--pure-search", "--seed", "5", "--ledger", path.string()};
  ASSERT_EQ(run(cmd).code, 0);
  ASSERT_EQ(run(cmd).code, 0);
  ASSERT_EQ(run({"witness", "esc4", "ESC4(64)", "--seed", "9", "--ledger", path.string()}).code, 0);
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 3u);
  for (const char* key : {"spec_string", "order", "filled", "rule_chain", "witness", "seed", "elapsed_ms",
                          "tool_version", "timestamp", "args"})
    EXPECT_TRUE(lines[0].contains(key)) << key;
  EXPECT_EQ(lines[0]["filled"], false);
  EXPECT_EQ(lines[0]["seed"], 5);
  EXPECT_EQ(lines[0]["filled"], lines[1]["filled"]);
  EXPECT_EQ(lines[0]["witness"], lines[1]["witness"]);
  EXPECT_EQ(lines[0]["rule_chain"], lines[1]["rule_chain"]);
  EXPECT_EQ(lines[2]["seed"], 9);
  EXPECT_EQ(lines[2]["filled"], false);

  // Replaying the recorded arguments reproduces the record.
  const auto replay = run(lines[2]["args"].get<std::vector<std::string>>());
  EXPECT_EQ(replay.json()["set"], lines[2]["witness"]);
  EXPECT_EQ(read_lines(path).size(), 4u);
  std::filesystem::remove(path);
}

TEST(Cli, LedgerFromEnvironment) {
  const auto path = temp_path("env.jsonl");
  ::setenv(filled::cli::kLedgerEnv, path.c_str(), 1);
  const auto r = run({"classify", "C(3)"});
  // Table and verify output is not recorded.
  run({"table", "8"});
  run({"verify", "C(3)", "--set", "[1]"});
  ::unsetenv(filled::cli::kLedgerEnv);
  ASSERT_EQ(r.code, 0);
  const auto lines = read_lines(path);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["spec_string"], "C(3)");
  EXPECT_EQ(lines[0]["filled"], true);
  std::filesystem::remove(path);
}
