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

#include <string>

#include "dioexp/construction.hpp"
#include "dioexp/target.hpp"
#include "oracle.hpp"

namespace dioexp {
namespace {

using oracle::Q;
using oracle::Z;

ConstructionParams Worked() {
  ConstructionParams p;
  p.w = 3;
  p.tau0 = Rat(1, 2);
  p.tau1 = 1;
  p.sigma = Rat(3, 2);
  return p;
}

// Checks that center +/- radius brackets sqrt(p) - floor(sqrt(p)) by squaring.
void ExpectBracketsSqrt(long p, const Rat& center, const Rat& radius) {
  long f = 0;
  while ((f + 1) * (f + 1) <= p) ++f;
  Q lo = center - radius + f;
  Q hi = center + radius + f;
  EXPECT_LE(lo * lo, Q(p));
  EXPECT_GE(hi * hi, Q(p));
}

TEST(TargetQuadratic, SqrtTwoThree) {
  TargetPoint t = TargetQuadratic(2, 3, 60);
  EXPECT_LE(t.radius, Q(1, Z("1" + std::string(60, '0'))));
  ExpectBracketsSqrt(2, t.alpha, t.radius);
  ExpectBracketsSqrt(3, t.beta, t.radius);
  EXPECT_EQ(t.provenance, Provenance::kAlgebraic);
  EXPECT_LT(t.alpha, Rat(414213563, 1000000000));
  EXPECT_GT(t.alpha, Rat(414213562, 1000000000));
  EXPECT_LT(t.beta, Rat(732050808, 1000000000));
  EXPECT_GT(t.beta, Rat(732050807, 1000000000));
}

TEST(TargetQuadratic, RejectsSquares) {
  for (auto [p, q] : {std::pair{4L, 3L}, {2L, 2L}, {2L, 8L}, {3L, 9L}}) {
    try {
      TargetQuadratic(p, q, 30);
      ADD_FAILURE() << p << "," << q;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPerfectSquareInput);
    }
  }
}

TEST(TargetQuadratic, RefinementNeverWidens) {
  for (int d = 5; d < 80; d += 7) {
    TargetPoint a = TargetQuadratic(5, 7, d);
    TargetPoint b = TargetQuadratic(5, 7, d + 7);
    EXPECT_LE(b.radius, a.radius);
    EXPECT_LE(Abs(a.alpha - b.alpha), a.radius + b.radius);
    EXPECT_LE(Abs(a.beta - b.beta), a.radius + b.radius);
    ExpectBracketsSqrt(5, b.alpha, b.radius);
    ExpectBracketsSqrt(7, b.beta, b.radius);
  }
}

// Fibonacci word over {1,2} from the substitution 1 -> 12, 2 -> 1.
std::vector<int> OracleWord(int n) {
  std::vector<int> w{1};
  while (static_cast<int>(w.size()) < n) {
    std::vector<int> next;
    for (int c : w) {
      next.push_back(1);
      if (c == 1) next.push_back(2);
    }
    w = next;
  }
  w.resize(n);
  return w;
}

Q OracleCf(const std::vector<int>& quotients) {
  Q x = 0;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    x = Q(1) / (Q(*it) + x);
  }
  return x;
}

TEST(TargetFibonacci, Quotients) {
  EXPECT_EQ(FibonacciQuotients(8), (std::vector<int>{1, 2, 1, 1, 2, 1, 2, 1}));
  EXPECT_EQ(FibonacciQuotients(200), OracleWord(200));
}

TEST(TargetFibonacci, DepthFiveIsExactConvergent) {
  TargetPoint t = TargetFibonacciCf(5);
  EXPECT_EQ(t.alpha, Rat(13, 18));  // [0; 1, 2, 1, 1, 2]
  EXPECT_EQ(t.alpha, OracleCf({1, 2, 1, 1, 2}));
  EXPECT_EQ(t.beta, t.alpha * t.alpha);
}

TEST(TargetFibonacci, DepthFourRejected) {
  try {
    TargetFibonacciCf(4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolated);
  }
}

TEST(TargetFibonacci, RadiusCoversDeeperConvergents) {
  std::vector<int> word = OracleWord(120);
  for (int depth : {5, 10, 30, 60}) {
    TargetPoint t = TargetFibonacciCf(depth);
    for (int deeper : {depth + 1, depth + 2, depth + 7, 120}) {
      Q a = OracleCf(std::vector<int>(word.begin(), word.begin() + deeper));
      EXPECT_LE(Abs(a - t.alpha), t.radius) << depth << " vs " << deeper;
      EXPECT_LE(Abs(a * a - t.beta), t.radius) << depth << " vs " << deeper;
    }
    if (depth > 5) {
      EXPECT_LE(t.radius, TargetFibonacciCf(depth - 5).radius);
    }
  }
}

TEST(TargetFibonacci, RoundedDigits) {
  TargetPoint exact = TargetFibonacciCf(60);
  TargetPoint rounded = TargetFibonacciCf(60, 30);
  EXPECT_LE(Abs(exact.alpha - rounded.alpha) + exact.radius, rounded.radius);
  EXPECT_LE(Abs(exact.beta - rounded.beta) + exact.radius, rounded.radius);
}

TEST(TargetFromRun, SeedPointAndFormula) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 3);
  TargetPoint t = TargetFromRun(run, 1, 0);
  EXPECT_EQ(t.alpha, Rat(1, 500));  // P_{1,0} = (1, 20, 500)
  EXPECT_EQ(t.beta, Rat(1, 25));
  EXPECT_EQ(t.radius, TailRadius(run, 1, 0));
  EXPECT_EQ(t.provenance, Provenance::kConstructedRun);
}

TEST(TargetFromRun, RadiusCoversLaterPoints) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 4);
  for (int n = 1; n <= run.depth; ++n) {
    // The last point of a level is indexed as (n + 1, 0).
    const int kmax = static_cast<int>(run.levels[n - 1].points.size()) - 1;
    for (int k = 0; k < kmax; ++k) {
      TargetPoint t = TargetFromRun(run, n, k);
      for (int n2 = n; n2 <= run.depth; ++n2) {
        for (const ProjectivePoint& p : run.levels[n2 - 1].points) {
          Q a(p.coords.x(), p.coords.z()), b(p.coords.y(), p.coords.z());
          a.canonicalize();
          b.canonicalize();
          EXPECT_LE(std::max(Abs(a - t.alpha), Abs(b - t.beta)), t.radius);
        }
      }
    }
  }
  TargetPoint deepest = TargetFromRun(run, run.depth + 1, 0);
  EXPECT_LT(deepest.radius, Q(1, Z("1" + std::string(20, '0'))));
}

TEST(TargetFromRun, InvalidIndex) {
  ConstructionRun run = RunConstruction(Worked(), Int(20), 2);
  for (auto [n, k] : {std::pair{0, 0}, {3, 1}, {1, 99}, {7, 0}}) {
    try {
      TargetFromRun(run, n, k);
      ADD_FAILURE() << n << "," << k;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRun);
    }
  }
}

TEST(ParseTarget, Forms) {
  TargetPoint s = ParseTarget("sqrt:2,3", 40);
  EXPECT_EQ(s.alpha, TargetQuadratic(2, 3, 40).alpha);
  TargetPoint f = ParseTarget("fib:12", 40);
  EXPECT_EQ(f.alpha, TargetFibonacciCf(12).alpha);
  TargetPoint l = ParseTarget("lit:2/5,7/10,1/1000", 40);
  EXPECT_EQ(l.alpha, Rat(2, 5));
  EXPECT_EQ(l.beta, Rat(7, 10));
  EXPECT_EQ(l.radius, Rat(1, 1000));
  EXPECT_THROW(ParseTarget("nonsense", 40), Error);
  EXPECT_THROW(ParseTarget("sqrt:2", 40), Error);
  EXPECT_THROW(ParseTarget("lit:1/2,1/3,-1", 40), Error);
}

}  // namespace
}  // namespace dioexp
