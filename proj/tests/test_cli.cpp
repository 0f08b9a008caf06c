#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fernlab/cli.hpp"
#include "fernlab/params.hpp"

using namespace fernlab;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "fernlab");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Outcome& r) { return nlohmann::json::parse(r.out); }

const char* kFig4 = "Rc x=2 y=1 z=4 a=[1,1,1,1] c=[2,2,1] b=[2,1,1,2]";

}  // namespace

TEST(Cli, CountHexagon) {
  Outcome r = run({"count", "Hex x=1 y=1 z=1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("formula: 2"), std::string::npos);
}

TEST(Cli, CountJsonWithOracle) {
  Outcome r = run({"count", kFig4, "--oracle", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json_of(r);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["command"], "count");
  EXPECT_EQ(j["results"]["formula"], "15830005025219026585279690015638552576000");
  EXPECT_EQ(j["results"]["oracle"], j["results"]["formula"]);
  EXPECT_EQ(j["results"]["agree"], true);
  // the echoed spec parses back to the input
  EXPECT_EQ(parse_spec(j["inputs"]["spec"].get<std::string>()), parse_spec(kFig4));
}

TEST(Cli, Audit) {
  Outcome r = run({"--json", "count", "Rc x=2 y=0 z=2 a=[1,1] c=[2] b=[1,1]", "--audit"});
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_EQ(j["results"]["formula"], "506880");
  EXPECT_GT(j["results"]["factors"].size(), 1u);
  EXPECT_EQ(j["results"]["sqrt_pi_exponent"], "0");
}

TEST(Cli, UserErrors) {
  Outcome parity = run({"count", "Rc x=1 y=0 z=2 a=[] c=[] b=[]"});
  EXPECT_EQ(parity.code, 2);
  EXPECT_NE(parity.err.find("parity"), std::string::npos);
  EXPECT_EQ(run({"count", "Rc x=1 a=[1,"}).code, 2);
  EXPECT_EQ(run({"count"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"count", "Hex x=1 y=1 z=1", "--backend", "magic"}).code, 2);
  EXPECT_EQ(run({"verify", "kuo", "--id", "Zz"}).code, 2);
  EXPECT_EQ(run({"verify", "kuo", "--id", "Rc-lt", "--spec", "Rc x=2 y=1 z=2 a=[2] c=[1] b=[1]"}).code, 2);
  EXPECT_EQ(run({"verify", "dual", "--a", "[1]", "--b", "[2]"}).code, 2);
  Outcome multi = run({"count", "Rc x=-1 y=-3 z=2 a=[-1]"});
  EXPECT_EQ(multi.code, 2);
  EXPECT_GE(std::count(multi.err.begin(), multi.err.end(), '\n'), 3);
}

TEST(Cli, ResourceCeiling) {
  EXPECT_EQ(run({"count", "Hex x=3 y=3 z=3", "--oracle", "--max-area", "10"}).code, 3);
}

TEST(Cli, Help) {
  Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, VerifyGrid) {
  Outcome r = run({"verify", "grid", "--max-x", "2", "--max-z", "2", "--max-y", "1", "--max-area", "80", "--json"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json_of(r);
  EXPECT_EQ(j["results"]["total"]["failures"].size(), 0u);
  EXPECT_EQ(j["results"]["total"]["pass"], true);
}

TEST(Cli, VerifyGridSample) {
  Outcome a = run({"verify", "grid", "--sample", "5", "--seed", "3", "--json"});
  Outcome b = run({"verify", "grid", "--sample", "5", "--seed", "3", "--json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(json_of(a)["results"]["families"]["Rc"]["instances_checked"],
            json_of(b)["results"]["families"]["Rc"]["instances_checked"]);
}

TEST(Cli, VerifyKuoFigureInstance) {
  Outcome r = run({"verify", "kuo", "--id", "Rc-lt", "--spec", "Rc x=2 y=1 z=2 a=[1,1] c=[1,2,1] b=[1,2]"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("pass Rc-lt"), std::string::npos);
}

TEST(Cli, VerifyKuoFormulaMode) {
  Outcome r = run({"verify", "kuo", "--id", "Ql-gt", "--mode", "formula", "--json"});
  ASSERT_EQ(r.code, 0);
  auto j = json_of(r);
  EXPECT_GE(j["results"]["instances"].size(), 4u);
  EXPECT_EQ(j["results"]["instances"][0]["regions"].size(), 6u);
}

TEST(Cli, VerifyExtremalSmall) {
  Outcome r = run({"verify", "extremal", "--max-x", "1", "--max-z", "1", "--max-y", "1", "--ferns", "[] [1]"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("reductions"), std::string::npos);
}

TEST(Cli, EmptyFernListIsUserError) {
  EXPECT_EQ(run({"verify", "grid", "--ferns", "none"}).code, 2);
}

TEST(Cli, VerifyDual) {
  Outcome r = run({"verify", "dual", "--a", "[1,1]", "--b", "[1,1]", "--c", "[2]", "--x", "1", "--z", "1", "--N",
               "4,8,16,24", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json_of(r);
  auto& rows = j["results"]["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[3]["N"], "24");
  EXPECT_LE(std::stod(rows[3]["relative_error"].get<std::string>()), 0.05);
  EXPECT_EQ(rows[0]["exact_agrees"], true);
}

TEST(Cli, VerifyDualFailsOutsideTolerance) {
  Outcome r = run({"verify", "dual", "--a", "[2]", "--b", "[2]", "--c", "[1,1]", "--x", "2", "--z", "1", "--N", "4"});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, RenderAscii) {
  Outcome r = run({"render", "Hex x=1 y=1 z=1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "^v^\nv^v\n");
}

TEST(Cli, RenderTilingSvgToFile) {
  std::string path = testing::TempDir() + "fernlab_unit_hex.svg";
  Outcome r = run({"render", "Hex x=1 y=1 z=1", "--format", "svg", "--tiling", "first", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string svg = ss.str();
  size_t n = 0;
  for (size_t p = svg.find("<polygon fill=\"#"); p != std::string::npos; p = svg.find("<polygon fill=\"#", p + 1)) ++n;
  EXPECT_EQ(n, 3u);
  std::remove(path.c_str());
}

TEST(Cli, RenderInvalidSpec) { EXPECT_EQ(run({"render", "Rl x=2 y=0 z=2"}).code, 2); }
