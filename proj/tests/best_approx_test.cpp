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

#include <fstream>
#include <random>
#include <sstream>

#include "dioexp/best_approx.hpp"
#include "dioexp/target.hpp"
#include "oracle.hpp"

namespace dioexp {
namespace {

oracle::T3 O(const IntegerTriple& t) { return {t.x(), t.y(), t.z()}; }

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Compares a library trace with oracle records, triple by triple.
void ExpectSameRecords(const ExponentTrace& trace, const std::vector<oracle::Record>& expected,
                       const std::string& what) {
  ASSERT_EQ(trace.records.size(), expected.size()) << what;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const ApproxRecord& r = trace.records[i];
    const oracle::Record& e = expected[i];
    EXPECT_EQ(O(r.triple), e.triple) << what << " #" << i;
    EXPECT_EQ(oracle::Canon(e.triple), e.triple) << what << " #" << i;
    EXPECT_EQ(r.norm, e.norm) << what << " #" << i;
    EXPECT_TRUE(r.value.Contains(e.center)) << what << " #" << i;
    EXPECT_GE(r.value.lo, e.lo) << what << " #" << i;
    EXPECT_LE(r.value.hi, e.hi) << what << " #" << i;
    // The library's certificate is a sufficient condition for the exact one.
    if (r.certified) EXPECT_TRUE(e.certified) << what << " #" << i;
  }
}

std::vector<TargetPoint> Targets() {
  return {TargetQuadratic(2, 3, 60), TargetQuadratic(5, 7, 60), TargetQuadratic(3, 11, 60),
          TargetFibonacciCf(40), ParseTarget("lit:1234567890123456789/9876543210987654321,"
                                             "271828182845904523/314159265358979323,0",
                                             60)};
}

TEST(BruteForce, FirstRecordsSqrtTwoThree) {
  TargetPoint t = TargetQuadratic(2, 3, 60);
  ExponentTrace m = BruteForceMinima(t, Int(1), Which::kM);
  ASSERT_EQ(m.records.size(), 1u);
  EXPECT_EQ(m.records[0].triple.vec(), (Vec3{0, 1, 1}));
  EXPECT_TRUE(m.records[0].value.Contains(oracle::CenterM({0, 1, 1}, t.alpha, t.beta)));
  ExponentTrace l = BruteForceMinima(t, Int(1), Which::kL);
  ASSERT_EQ(l.records.size(), 1u);
  EXPECT_EQ(l.records[0].triple.vec(), (Vec3{1, 1, -1}));
  EXPECT_LT(l.records[0].value.hi, Rat(14626437, 100000000));
  EXPECT_GT(l.records[0].value.lo, Rat(14626436, 100000000));
}

TEST(BruteForce, RationalTargetIsDependent) {
  TargetPoint t = ParseTarget("lit:2/5,7/10,0", 60);
  try {
    BruteForceMinima(t, Int(100), Which::kL);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRationalDependence);
  }
}

TEST(BruteForce, CoarseTargetRejected) {
  TargetPoint t = TargetQuadratic(2, 3, 60);
  t.radius = Rat(3, 5);  // pushes the first interval above 1
  for (Which which : {Which::kL, Which::kM}) {
    try {
      BruteForceMinima(t, Int(50), which);
      ADD_FAILURE() << WhichName(which);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTargetTooCoarse);
    }
  }
}

TEST(BruteForce, UncertifiedSuffixFlagged) {
  TargetPoint t = TargetFibonacciCf(12);  // radius near 1e-5
  ExponentTrace tr = BruteForceMinima(t, Int(3000), Which::kL);
  bool seen_uncertified = false;
  for (const ApproxRecord& r : tr.records) {
    if (!r.certified) seen_uncertified = true;
    if (seen_uncertified) EXPECT_FALSE(r.certified);
  }
  EXPECT_TRUE(seen_uncertified);
  EXPECT_TRUE(tr.records.front().certified);
}

TEST(OracleEquivalence, FullScanAtTinyHeights) {
  for (const TargetPoint& t : Targets()) {
    for (bool is_l : {true, false}) {
      const long H = 9;
      auto full = oracle::FullScan(t.alpha, t.beta, t.radius, H, is_l);
      auto fast = is_l ? oracle::MinimaL(t.alpha, t.beta, t.radius, H)
                       : oracle::MinimaM(t.alpha, t.beta, t.radius, H);
      ASSERT_EQ(full.size(), fast.size());
      for (std::size_t i = 0; i < full.size(); ++i) {
        EXPECT_EQ(full[i].triple, fast[i].triple);
        EXPECT_EQ(full[i].certified, fast[i].certified);
      }
      ExpectSameRecords(BruteForceMinima(t, Int(H), is_l ? Which::kL : Which::kM), full,
                        t.label + (is_l ? " L" : " M"));
    }
  }
}

TEST(OracleEquivalence, ShellScanMatchesOracle) {
  for (const TargetPoint& t : Targets()) {
    const long H = 300;
    ExpectSameRecords(BruteForceMinima(t, Int(H), Which::kL),
                      oracle::MinimaL(t.alpha, t.beta, t.radius, H), t.label + " L");
    ExpectSameRecords(BruteForceMinima(t, Int(H), Which::kM),
                      oracle::MinimaM(t.alpha, t.beta, t.radius, H), t.label + " M");
  }
}

TEST(OracleEquivalence, CoarseTargetCertificationIsSound) {
  TargetPoint t = TargetFibonacciCf(14);
  for (bool is_l : {true, false}) {
    const long H = 400;
    ExpectSameRecords(BruteForceMinima(t, Int(H), is_l ? Which::kL : Which::kM),
                      is_l ? oracle::MinimaL(t.alpha, t.beta, t.radius, H)
                           : oracle::MinimaM(t.alpha, t.beta, t.radius, H),
                      is_l ? "L" : "M");
  }
}

TEST(BruteForceProperty, RandomTargetsMatchOracle) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> num(1, 999999999);
  for (int i = 0; i < 12; ++i) {
    TargetPoint t;
    t.alpha = Rat(num(rng), 1000000007);
    t.beta = Rat(num(rng), 998244353);
    t.radius = Rat(1, Int("1000000000000000000000000"));
    const long H = 120;
    for (bool is_l : {true, false}) {
      auto expected = is_l ? oracle::MinimaL(t.alpha, t.beta, t.radius, H)
                           : oracle::MinimaM(t.alpha, t.beta, t.radius, H);
      ExponentTrace tr = BruteForceMinima(t, Int(H), is_l ? Which::kL : Which::kM, 1 + i % 3);
      ExpectSameRecords(tr, expected, "random " + std::to_string(i));
      for (std::size_t k = 1; k < tr.records.size(); ++k) {
        EXPECT_LT(tr.records[k - 1].norm, tr.records[k].norm);
        EXPECT_LT(expected[k].center, expected[k - 1].center);
      }
    }
  }
}

TEST(BruteForce, WorkerCountDoesNotChangeOutput) {
  TargetPoint t = TargetQuadratic(5, 7, 60);
  for (Which which : {Which::kL, Which::kM}) {
    std::string base = TraceCsv(BruteForceMinima(t, Int(1500), which, 1));
    for (int workers : {2, 3, 5}) {
      EXPECT_EQ(TraceCsv(BruteForceMinima(t, Int(1500), which, workers)), base);
    }
  }
}

TEST(Golden, SqrtTwoThreeMTrace) {
  const std::string golden = ReadFile(std::string(DIOEXP_GOLDEN_DIR) + "/sqrt2_sqrt3_M_5000.csv");
  ASSERT_FALSE(golden.empty());
  TargetPoint t = TargetQuadratic(2, 3, 60);
  for (int workers : {1, 2, 4}) {
    ExponentTrace tr = BruteForceMinima(t, Int(5000), Which::kM, workers);
    EXPECT_EQ(TraceCsv(tr), golden) << "workers " << workers;
  }
  ExpectSameRecords(BruteForceMinima(t, Int(5000), Which::kM),
                    oracle::MinimaM(t.alpha, t.beta, t.radius, 5000), "golden");
}

ApproxRecord Rec(long x, long y, long z, const Int& norm, const Rat& value) {
  return {Normalize(Vec3{x, y, z}), norm, {value, value}, true};
}

TEST(ExponentTrace, DefinitionIdentities) {
  // value = 1/norm gives v = 1; value = norm^-2 with next norm = norm^2 gives w = 1.
  std::vector<ApproxRecord> recs{Rec(1, 0, 0, Int(10), Rat(1, 100)),
                                 Rec(0, 1, 0, Int(100), Rat(1, 100)),
                                 Rec(0, 0, 1, Int(1000), Rat(1, 1000))};
  ExponentTrace tr = MakeExponentTrace(Which::kL, recs);
  EXPECT_LE(tr.v_seq[0].lo, 2.0);
  EXPECT_GE(tr.v_seq[0].hi, 2.0);
  EXPECT_LE(tr.w_seq[0].lo, 1.0);
  EXPECT_GE(tr.w_seq[0].hi, 1.0);
  EXPECT_LE(tr.v_seq[1].lo, 1.0);
  EXPECT_GE(tr.v_seq[1].hi, 1.0);
  EXPECT_LE(tr.v_seq[2].lo, 1.0);
  EXPECT_GE(tr.v_seq[2].hi, 1.0);
  EXPECT_FALSE(tr.w_seq[2].defined());
  EXPECT_LT(tr.v_seq[0].width(), 1e-12);
}

TEST(Summarize, ConstantTraceAndClamp) {
  // norms 10^k and values 10^(-2k): v_n = 2, w_n = 2k/(k+1).
  std::vector<ApproxRecord> recs;
  Int n = 1;
  Rat v = 1;
  for (int k = 1; k <= 6; ++k) {
    n *= 10;
    v /= 100;
    recs.push_back(Rec(1, k, 0, n, v));
  }
  ExponentTrace tr = MakeExponentTrace(Which::kM, recs);
  ExponentSummary s = Summarize(tr, 3);
  EXPECT_EQ(s.window, 3);
  EXPECT_NEAR(s.omega.mid(), 2.0, 1e-12);
  EXPECT_NEAR(s.omega_hat.mid(), 2.0 * 3 / 4, 1e-12);
  ExponentSummary all = Summarize(tr, 100);
  EXPECT_EQ(all.window, 5);  // the last record has no w_n
  EXPECT_NEAR(all.omega_hat.mid(), 1.0, 1e-12);
}

TEST(Dual, WedgeExamples) {
  ApproxRecord a = Rec(1, 0, 0, Int(1), Rat(1, 2));
  ApproxRecord b = Rec(0, 1, 0, Int(1), Rat(1, 3));
  EXPECT_EQ(DualPointFromLines(a, b).coords.vec(), (Vec3{0, 0, 1}));
  ApproxRecord p = Rec(1, 0, 1, Int(1), Rat(1, 2));
  ApproxRecord q = Rec(0, 1, 1, Int(1), Rat(1, 3));
  EXPECT_EQ(DualLineFromPoints(p, q).coords.vec(), (Vec3{1, 1, -1}));
  try {
    DualPointFromLines(a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProportionalTriples);
  }
  EXPECT_THROW(DualLineFromPoints(p, p), Error);
}

TEST(Dual, TransferenceWitnessesOnQuadraticTraces) {
  TargetPoint t = TargetQuadratic(2, 3, 60);
  ExponentTrace l = BruteForceMinima(t, Int(5000), Which::kL);
  ExponentTrace m = BruteForceMinima(t, Int(5000), Which::kM);
  ASSERT_GE(l.records.size(), 5u);
  for (std::size_t i = 0; i + 1 < l.records.size(); ++i) {
    oracle::T3 a = O(l.records[i].triple), b = O(l.records[i + 1].triple);
    EXPECT_EQ(oracle::LineWitness(a, b, t.alpha, t.beta), "");
    ProjectivePoint q = DualPointFromLines(l.records[i], l.records[i + 1]);
    EXPECT_EQ(O(q.coords), oracle::Canon(oracle::Cross(a, b)));
  }
  for (std::size_t i = 0; i + 1 < m.records.size(); ++i) {
    oracle::T3 a = O(m.records[i].triple), b = O(m.records[i + 1].triple);
    EXPECT_EQ(oracle::PointWitness(a, b, t.alpha, t.beta), "");
    ProjectiveLine d = DualLineFromPoints(m.records[i], m.records[i + 1]);
    EXPECT_EQ(O(d.coords), oracle::Canon(oracle::Cross(a, b)));
  }
}

TEST(Export, CsvAndPlotFormats) {
  TargetPoint t = TargetQuadratic(2, 3, 60);
  ExponentTrace tr = BruteForceMinima(t, Int(200), Which::kL);
  std::string csv = TraceCsv(tr);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,x,y,z,norm,value_lo,value_hi,v_n,w_n,certified");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            tr.records.size() + 1);
  std::string plot = PlotCsv(tr);
  EXPECT_EQ(plot.substr(0, plot.find('\n')), "log10_norm,log10_value");
  ExponentSummary s = Summarize(tr, 4);
  std::string side = PlotSidecarJson(tr, t, s);
  std::string line = SummaryLine(s, Which::kL);
  // Every number printed in the summary line also appears in the sidecar.
  std::istringstream words(line);
  std::string word;
  while (words >> word) {
    while (!word.empty() && (word.back() == ',' || word.back() == ']' || word.back() == ')')) {
      word.pop_back();
    }
    while (!word.empty() && (word.front() == '[' || word.front() == '(')) word.erase(0, 1);
    if (!word.empty() && (std::isdigit(static_cast<unsigned char>(word[0])) || word[0] == '-')) {
      EXPECT_NE(side.find(word), std::string::npos) << word;
    }
  }
}

}  // namespace
}  // namespace dioexp
