// Copyright 2026 The dioexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dioexp/best_approx.hpp"
#include "dioexp/cli.hpp"
#include "dioexp/run_io.hpp"
#include "dioexp/target.hpp"

namespace dioexp {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::Main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dioexp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    unsetenv("DIOEXP_DIGITS");
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string P(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::vector<std::string> kWorked = {"construct", "--w", "3", "--tau0", "1/2",
                                          "--tau1", "1", "--sigma", "3/2", "--h1", "20"};

TEST_F(CliTest, ConstructWorked) {
  auto args = kWorked;
  args.insert(args.end(), {"--out", P("run.json")});
  Outcome o = Invoke(args);
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_NE(o.out.find("h1 = 20, depth 3"), std::string::npos);
  EXPECT_NE(o.out.find("predicted Ω = (6, 4/3, 3, 2/3)"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("wrote " + P("run.json")), std::string::npos);
  ConstructionRun run = ReadRunFile(P("run.json"));
  EXPECT_EQ(run.h1, 20);
  EXPECT_EQ(run.levels.size(), 3u);
}

TEST_F(CliTest, ConstructThenVerifyRun) {
  auto args = kWorked;
  args.insert(args.end(), {"--out", P("run.json")});
  ASSERT_EQ(Invoke(args).code, cli::kExitOk);
  Outcome v = Invoke({"verify", "--run", P("run.json"), "--out", P("report.json")});
  EXPECT_EQ(v.code, cli::kExitOk) << v.out << v.err;
  EXPECT_NE(v.out.find("all checks pass"), std::string::npos);
  nlohmann::json rep = nlohmann::json::parse(Slurp(P("report.json")));
  EXPECT_EQ(rep["schema"], "dioexp.report/1");
}

TEST_F(CliTest, VerifyQuadrupleExitCodes) {
  Outcome good = Invoke({"verify", "--quad", "6,4/3,3,2/3"});
  EXPECT_EQ(good.code, cli::kExitOk);
  EXPECT_NE(good.out.find("PASS jarnik: residual 0"), std::string::npos) << good.out;
  Outcome bad = Invoke({"verify", "--quad", "6,3,3,2/3"});
  EXPECT_EQ(bad.code, cli::kExitCheckFailure);
  EXPECT_NE(bad.out.find("FAIL refined upper: residual -5/3"), std::string::npos) << bad.out;
}

TEST_F(CliTest, InvalidParamsExitTwoWithName) {
  Outcome o = Invoke({"construct", "--w", "2", "--tau0", "1/2", "--tau1", "1/2", "--sigma", "1",
                   "--out", P("x.json")});
  EXPECT_EQ(o.code, cli::kExitBadInput);
  EXPECT_NE(o.err.find("requires tau0 < tau1"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(P("x.json")));
  Outcome s = Invoke({"construct", "--w", "3", "--tau0", "1/2", "--tau1", "1", "--sigma", "1",
                   "--out", P("x.json")});
  EXPECT_EQ(s.code, cli::kExitBadInput);
  EXPECT_NE(s.err.find("requires w*tau0 <= sigma"), std::string::npos) << s.err;
}

TEST_F(CliTest, BadInputs) {
  EXPECT_EQ(Invoke({}).code, cli::kExitBadInput);
  EXPECT_EQ(Invoke({"frobnicate"}).code, cli::kExitBadInput);
  EXPECT_EQ(Invoke({"analyze", "--target", "sqrt:4,3", "--hmax", "10"}).code, cli::kExitBadInput);
  EXPECT_EQ(Invoke({"analyze", "--target", "sqrt:2,3", "--hmax", "1"}).code, cli::kExitBadInput);
  Outcome dep = Invoke({"analyze", "--target", "lit:2/5,7/10,0", "--hmax", "50"});
  EXPECT_EQ(dep.code, cli::kExitBadInput);
  EXPECT_NE(dep.err.find("linearly dependent"), std::string::npos) << dep.err;
  EXPECT_EQ(Invoke({"construct", "--depth", "0"}).code, cli::kExitBadInput);
  EXPECT_EQ(Invoke({"verify", "--run", P("missing.json")}).code, cli::kExitBadInput);
  EXPECT_EQ(Invoke({"construct", "--out", (dir_ / "no" / "such" / "dir.json").string()}).code,
            cli::kExitBadInput);
  EXPECT_EQ(Invoke({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, ResourceGuardExitThree) {
  auto args = kWorked;
  args.insert(args.end(), {"--depth", "6", "--digit-budget", "40", "--out", P("r.json")});
  Outcome o = Invoke(args);
  EXPECT_EQ(o.code, cli::kExitResourceGuard) << o.err;
}

TEST_F(CliTest, AnalyzeMatchesGolden) {
  Outcome o = Invoke({"analyze", "--target", "sqrt:2,3", "--hmax", "5000", "--which", "M",
                   "--workers", "2"});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_EQ(o.out, Slurp(fs::path(DIOEXP_GOLDEN_DIR) / "sqrt2_sqrt3_M_5000.csv"));
  EXPECT_NE(o.err.find("records 10 (10 certified)"), std::string::npos) << o.err;
}

TEST_F(CliTest, AnalyzeOutAndPlot) {
  Outcome o = Invoke({"analyze", "--target", "sqrt:2,3", "--hmax", "300", "--out", P("t.csv"),
                   "--plot", P("p.csv")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_NE(o.out.find("seminorm L"), std::string::npos);
  EXPECT_TRUE(fs::exists(P("t.csv")));
  EXPECT_TRUE(fs::exists(P("p.csv")));
  nlohmann::json side = nlohmann::json::parse(Slurp(P("p.csv") + ".json"));
  EXPECT_TRUE(side.contains("omega_hat"));
  ExponentTrace trace = BruteForceMinima(ParseTarget("sqrt:2,3", 60), Int(300), Which::kL, 1);
  EXPECT_EQ(side["window"], Summarize(trace, 8).window);
  EXPECT_LE(side["window"].get<int>(), 8);
}

TEST_F(CliTest, ConfigOverridesFlags) {
  {
    std::ofstream cfg(P("cfg.json"));
    cfg << R"({"hmax": "40", "which": "M", "window": 3})";
  }
  Outcome o = Invoke({"analyze", "--config", P("cfg.json"), "--target", "sqrt:2,3", "--hmax",
                   "5000", "--plot", P("p.csv")});
  ASSERT_EQ(o.code, cli::kExitOk) << o.err;
  EXPECT_NE(o.err.find("seminorm M, H <= 40"), std::string::npos) << o.err;
  EXPECT_EQ(nlohmann::json::parse(Slurp(P("p.csv") + ".json"))["window"], 3);
  {
    std::ofstream bad(P("bad.json"));
    bad << R"({"nonsense": 1})";
  }
  EXPECT_EQ(Invoke({"analyze", "--config", P("bad.json"), "--target", "sqrt:2,3"}).code,
            cli::kExitBadInput);
}

TEST_F(CliTest, DigitsFromEnvironment) {
  const std::vector<std::string> args = {"analyze", "--target", "sqrt:2,3", "--hmax", "20000"};
  setenv("DIOEXP_DIGITS", "12", 1);
  Outcome coarse = Invoke(args);
  auto flag = args;
  flag.insert(flag.end(), {"--digits", "60"});
  Outcome narrow = Invoke(flag);
  setenv("DIOEXP_DIGITS", "banana", 1);
  EXPECT_EQ(Invoke({"verify", "--quad", "6,4/3,3,2/3"}).code, cli::kExitBadInput);
  unsetenv("DIOEXP_DIGITS");
  ASSERT_EQ(coarse.code, cli::kExitOk) << coarse.err;
  ASSERT_EQ(narrow.code, cli::kExitOk) << narrow.err;
  EXPECT_NE(coarse.err.find("records 15 (13 certified)"), std::string::npos) << coarse.err;
  EXPECT_NE(narrow.err.find("records 18 (18 certified)"), std::string::npos) << narrow.err;
}

}  // namespace
}  // namespace dioexp
