#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

std::string data(const std::string& name) { return std::string(RELDEND_DATA) + "/" + name; }

CliRun cli(const std::string& args) {
  std::string cmd = std::string(RELDEND_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  CliRun r{-1, {}};
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, CheckAlgebraPasses) {
  CliRun r = cli("check-algebra --algebra " + data("cocycle_algebra.json") + " --suite RelAssoc");
  ASSERT_EQ(r.code, 0) << r.out;
  json j = json::parse(r.out);
  EXPECT_EQ(j["check"], "RelAssoc");
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["instances"], 8);
}

TEST(Cli, FailureExitsOne) {
  CliRun r = cli("check-semigroup --semigroup " + data("not_associative.json"));
  EXPECT_EQ(r.code, 1);
  json j = json::parse(r.out);
  EXPECT_EQ(j["counterexample"]["indices"], json({"1", "0", "1"}));
  r = cli("check-dimonoid --dimonoid " + data("swapped_projections.json"));
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, MalformedInputExitsTwo) {
  CliRun r = cli("check-semigroup --semigroup /nonexistent.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "malformed-input");
  EXPECT_EQ(cli("check-algebra --algebra " + data("cocycle_algebra.json") + " --suite RelNothing").code, 2);
  EXPECT_EQ(cli("free-eval --dimonoid cyclic:2 --expr 'prec(0, x[]'").code, 2);
  EXPECT_EQ(cli("no-such-command").code, 2);
}

TEST(Cli, ContractViolationExitsThree) {
  CliRun r = cli("check-algebra --algebra " + data("harmonic_carrier.json") + " --suite RelAssoc");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "contract-violation");
  EXPECT_EQ(cli("free-check --dimonoid matching:2 --suite RelLie --samples 5").code, 3);
}

TEST(Cli, RotaBaxterWindow) {
  CliRun r = cli("check-rb --rb " + data("harmonic_rb.json") + " --window 10");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["instances"], 100);
}

TEST(Cli, CocycleAndMorphism) {
  EXPECT_EQ(cli("check-cocycle --cocycle " + data("z2_sign_cocycle.json")).code, 0);
  EXPECT_EQ(cli("check-morphism --algebra " + data("cocycle_algebra.json") + " --morphism " +
                data("character_morphism.json"))
                .code,
            0);
  CliRun r = cli("check-morphism --algebra " + data("cocycle_algebra.json") + " --morphism " + data("doubling_family.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["counterexample"]["indices"], json({"1", "1"}));
}

TEST(Cli, FreeEvalText) {
  CliRun r = cli("free-eval --dimonoid cyclic:2 --decorations x,y,z --expr 'prec(1, succ(0, x[], y[]), z[])'");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["details"]["text"], "1/1 * y[0: x[], 1: z[]]");
}

TEST(Cli, FreeCheckIsDeterministic) {
  const std::string args = "free-check --dimonoid cyclic:2 --suite FamDendriform --samples 50 --max-vertices 5 --seed 7";
  CliRun a = cli(args + " --threads 1");
  CliRun b = cli(args + " --threads 3");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["instances"], 3 * 4 * 50);
}

TEST(Cli, ReportsRoundTripThroughJson) {
  CliRun r = cli("check-semigroup --semigroup " + data("not_associative.json"));
  json j = json::parse(r.out);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, DeriveAndCollapse) {
  auto dir = std::filesystem::temp_directory_path() / "reldend_cli_test";
  std::filesystem::create_directories(dir);
  auto twisted = (dir / "collapsed.json").string();
  CliRun r = cli("collapse --algebra " + data("cocycle_algebra.json") + " --out " + twisted);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["details"]["algebra"]["dim"], 2);
  r = cli("check-algebra --algebra " + twisted + " --suite RelAssoc");
  EXPECT_EQ(r.code, 0) << r.out;

  r = cli("derive --construction dend-from-rb --rb " + data("harmonic_rb.json") + " --window 6");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(json::parse(r.out)["check"], "derive:dend-from-rb");

  auto doubled = (dir / "identity_rb.json").string();
  std::ofstream(doubled) << R"({"algebra": ")" << data("harmonic_carrier.json") << R"(", "maps": {"*": [[1]]}})";
  r = cli("derive --construction dend-from-rb --rb " + doubled + " --window 3");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["counterexample"]["equation"], "rota-baxter");
  std::filesystem::remove_all(dir);
}
