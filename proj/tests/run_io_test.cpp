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

#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "dioexp/run_io.hpp"
#include "dioexp/verify.hpp"

namespace dioexp {
namespace {

ConstructionParams Worked() {
  ConstructionParams p;
  p.w = 3;
  p.tau0 = Rat(1, 2);
  p.tau1 = 1;
  p.sigma = Rat(3, 2);
  return p;
}

void ExpectSameRun(const ConstructionRun& a, const ConstructionRun& b) {
  ASSERT_EQ(a.levels.size(), b.levels.size());
  EXPECT_EQ(a.h1, b.h1);
  EXPECT_EQ(a.depth, b.depth);
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    const auto& x = a.levels[i];
    const auto& y = b.levels[i];
    EXPECT_EQ(x.targets.h, y.targets.h);
    EXPECT_EQ(x.targets.q, y.targets.q);
    ASSERT_EQ(x.lines.size(), y.lines.size());
    ASSERT_EQ(x.points.size(), y.points.size());
    for (std::size_t k = 0; k < x.lines.size(); ++k) {
      EXPECT_TRUE(x.lines[k].coords == y.lines[k].coords);
    }
    for (std::size_t k = 0; k < x.points.size(); ++k) {
      EXPECT_TRUE(x.points[k].coords == y.points[k].coords);
    }
  }
  EXPECT_EQ(a.target.alpha, b.target.alpha);
  EXPECT_EQ(a.target.beta, b.target.beta);
  EXPECT_EQ(a.target.radius, b.target.radius);
  EXPECT_EQ(a.certificates.size(), b.certificates.size());
}

TEST(RunIo, RoundTripIsByteIdentical) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 3);
  std::string first = RunToJson(run);
  ConstructionRun back = RunFromJson(first);
  ExpectSameRun(run, back);
  EXPECT_EQ(RunToJson(back), first);
}

TEST(RunIo, RoundTripAllModes) {
  std::vector<std::pair<ConstructionParams, Int>> cases;
  ConstructionParams inf;
  inf.mode = Mode::kAllInfinite;
  cases.emplace_back(inf, Int(33));
  ConstructionParams vinf;
  vinf.mode = Mode::kVInfinite;
  vinf.w = 3;
  vinf.v_prime = ExtendedReal(Rat(4));
  cases.emplace_back(vinf, Int(5));
  for (const auto& [p, h1] : cases) {
    ConstructionRun run = RunConstruction(p, h1, 2);
    std::string text = RunToJson(run);
    ConstructionRun back = RunFromJson(text);
    ExpectSameRun(run, back);
    EXPECT_EQ(RunToJson(back), text);
  }
}

TEST(RunIo, DeterministicAcrossInvocations) {
  EXPECT_EQ(RunToJson(RunConstruction(Worked(), Int(20), 3)),
            RunToJson(RunConstruction(Worked(), Int(20), 3)));
}

TEST(RunIo, Schema) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 2);
  nlohmann::json doc = nlohmann::json::parse(RunToJson(run));
  EXPECT_EQ(doc["schema"], "dioexp.run/1");
  for (const char* key : {"params", "h1", "depth", "levels", "certificates", "target", "predicted"}) {
    EXPECT_TRUE(doc.contains(key)) << key;
  }
  EXPECT_EQ(doc["h1"], "20");
  EXPECT_EQ(doc["params"]["sigma"], "3/2");
  EXPECT_EQ(doc["predicted"]["v_prime"], "4/3");
  EXPECT_EQ(doc["levels"].size(), 2u);
  for (const auto& lv : doc["levels"]) {
    EXPECT_EQ(lv["lines"].size(), lv["points"].size());
    for (const auto& t : lv["lines"]) {
      ASSERT_EQ(t.size(), 3u);
      EXPECT_TRUE(t[0].is_string());
    }
  }
}

TEST(RunIo, StoredCertificatesMatchRecomputed) {
  ConstructionRun back = RunFromJson(RunToJson(RunConstruction(Worked(), Int(20), 3)));
  std::vector<Certificate> again = ComputeCertificates(back);
  ASSERT_EQ(again.size(), back.certificates.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    EXPECT_EQ(again[i].name, back.certificates[i].name);
    EXPECT_EQ(again[i].lhs, back.certificates[i].lhs);
    EXPECT_EQ(again[i].holds, back.certificates[i].holds);
  }
  EXPECT_TRUE(CertifyRun(back).AllPass());
}

TEST(RunIo, FileRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "dioexp_run_io_test.json";
  ConstructionRun run = RunConstruction(Worked(), Int(20), 2);
  WriteRunFile(path.string(), run);
  EXPECT_EQ(RunToJson(ReadRunFile(path.string())), RunToJson(run));
  std::filesystem::remove(path);
}

TEST(RunIo, RejectsMalformed) {
  for (const char* text : {"", "{}", "{\"schema\": \"other\"}", "[1,2,3]",
                           "{\"schema\": \"dioexp.run/1\", \"levels\": 3}"}) {
    try {
      RunFromJson(text);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kBadInput) << text;
    }
  }
  EXPECT_THROW(ReadRunFile("/nonexistent/run.json"), Error);
}

TEST(RunIo, TamperedTripleSurvivesIoAndIsCaught) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 2);
  nlohmann::json doc = nlohmann::json::parse(RunToJson(run));
  std::string x = doc["levels"][1]["lines"][1][0];
  doc["levels"][1]["lines"][1][0] = Int(Int(x) + 1).get_str();
  ConstructionRun bad = RunFromJson(doc.dump(2) + "\n");
  EXPECT_FALSE(CertifyRun(bad).AllPass());
}

}  // namespace
}  // namespace dioexp
