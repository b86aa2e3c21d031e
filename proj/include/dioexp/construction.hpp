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

#ifndef DIOEXP_CONSTRUCTION_HPP_
#define DIOEXP_CONSTRUCTION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dioexp/exponents.hpp"
#include "dioexp/geometry.hpp"
#include "dioexp/numeric.hpp"
#include "dioexp/target_point.hpp"

namespace dioexp {

enum class Mode { kFinite, kVInfinite, kAllInfinite };

const char* ModeName(Mode mode);
Mode ParseMode(std::string_view text);

// Thrown (as Error with kInvalidParams or kExcludedExtremalCase) when a
// parameter set is rejected; `inequality()` names the violated condition.
class InvalidParamsError : public Error {
 public:
  InvalidParamsError(ErrorCode code, std::string inequality, const std::string& detail)
      : Error(code, "requires " + inequality + (detail.empty() ? "" : " (" + detail + ")")),
        inequality_(std::move(inequality)) {}
  const std::string& inequality() const { return inequality_; }

 private:
  std::string inequality_;
};

struct ConstructionParams {
  Mode mode = Mode::kFinite;
  // Finite mode uses all four; v-infinite uses w and v_prime; all-infinite
  // uses none.
  Rat w, tau0, tau1, sigma;
  ExtendedReal v_prime = ExtendedReal::PosInf();
};

// Exponent sequences for one level n: tau[0..l] and sigma[0..l'].
struct LevelSchedule {
  int n = 1;
  std::vector<Rat> tau;
  std::vector<Rat> sigma;
  int l() const { return static_cast<int>(tau.size()) - 1; }
  int l_prime() const { return static_cast<int>(sigma.size()) - 1; }
};

struct Schedule {
  ConstructionParams params;
  // Schedule index of the first constructed level (1 in finite mode).
  int first_level = 1;
  // Fixed sequences of the finite mode.
  LevelSchedule fixed;

  LevelSchedule ForLevel(int n) const;
};

// Basis A, B of the integer points of a line, |A| <= |B|, |A| |B| <= sqrt(3) H.
struct LineBasis {
  Vec3 a, b;
  ProjectiveLine line;
};

LineBasis ReducedLineBasis(const ProjectiveLine& line);
// True when the basis satisfies every LineBasis invariant exactly.
bool IsValidLineBasis(const LineBasis& basis);

// Rational points P_1..P_l on `line` built from P_0 by the continued-fraction
// recurrence. Throws Error(kPreconditionViolated) naming the failed
// inequality among q_1 >= 14 q_0, q_0 q_1 >= 4 h, q_{k+1} >= 3 q_k.
std::vector<ProjectivePoint> PointChain(const ProjectiveLine& line, const ProjectivePoint& p0,
                                         std::span<const Rat> q_targets);
std::vector<ProjectivePoint> PointChain(const ProjectiveLine& line, const ProjectivePoint& p0,
                                         std::span<const Rat> q_targets,
                                         const LineBasis& basis);

// Dual: rational lines Delta_1..Delta_l through `point`, starting at line0.
std::vector<ProjectiveLine> LineChain(const ProjectivePoint& point, const ProjectiveLine& line0,
                                        std::span<const Rat> h_targets);

// Validates conditions (1) of the finite mode, or the mode constraints of the
// infinite modes, then builds the exponent sequences.
Schedule BuildSchedule(const ConstructionParams& params);

// Per-level sequences of the infinite modes. Throws InvalidParamsError when
// n is below the admissible range.
LevelSchedule InfiniteSchedule(Mode mode, const Rat& w, const ExtendedReal& v_prime, int n);

// Smallest admissible level index of an infinite-mode schedule.
int FirstInfiniteLevel(Mode mode, const Rat& w, const ExtendedReal& v_prime);

ExponentQuadruple PredictQuadruple(const ConstructionParams& params);

// Integer height targets of one level.
struct LevelTargets {
  int level = 1;       // 1-based position in the run
  int n = 1;           // schedule index
  Int h_n;             // h_{n,0}
  Int h_next;          // h_{n+1} = h_{n,l}
  std::vector<Int> h;  // h_{n,k}, k = 0..l
  std::vector<Int> q;  // q_{n,k}, k = 0..l'
};

// Height recurrences, rounded up to integers. Branching identities
// h_{n,l} = h_{n+1,0} and q_{n,l'} = q_{n+1,0} hold exactly.
std::vector<LevelTargets> LevelHeights(const Schedule& schedule, const Int& h1, int depth);

// Checks the chain preconditions on every level using the seed heights for
// the first level and the factor-2 height window afterwards. Returns the
// name of the first violated inequality, if any.
std::optional<std::string> ValidateLevels(std::span<const LevelTargets> levels);

// Smallest h1 >= 2 for which ValidateLevels passes at the given depth.
Int MinimalInitialHeight(const Schedule& schedule, int depth);

// Estimated decimal digits of the largest height a run of `depth` levels
// needs.
double EstimateDigits(const Schedule& schedule, const Int& h1, int depth);

struct Certificate {
  std::string name;
  std::string index;
  Rat lhs;
  Rat rhs;
  std::string relation;  // "<=", "==", "!=", or "ratio"
  bool holds = false;
  // Hard certificates carry the explicit constants. Soft ones record an
  // empirical ratio in lhs and hold when it lies within [1/rhs, rhs].
  bool hard = true;
};

struct ConstructionLevel {
  LevelTargets targets;
  LevelSchedule schedule;
  std::vector<ProjectiveLine> lines;    // Delta_{n,0..l}
  std::vector<ProjectivePoint> points;  // P_{n,0..l'}
};

struct RunOptions {
  double digit_budget = 2.0e6;
  // Replaces the default seed line/point when set.
  std::optional<std::pair<Vec3, Vec3>> seed;
};

struct ConstructionRun {
  ConstructionParams params;
  Schedule schedule;
  Int h1;
  int depth = 0;
  std::vector<ConstructionLevel> levels;
  std::vector<Certificate> certificates;
  TargetPoint target;
  ExponentQuadruple predicted;

  // P_{n,k} / Delta_{n,k} by level position (1-based) and in-level index.
  const ProjectivePoint& Point(int level, int k) const;
  const ProjectiveLine& Line(int level, int k) const;
};

ConstructionRun RunConstruction(const ConstructionParams& params, const Int& h1, int depth,
                                const RunOptions& options = {});

// Recomputes every certificate from the stored triples and targets alone.
std::vector<Certificate> ComputeCertificates(const ConstructionRun& run);

// Tail-bound radius of the target centered at the given index.
Rat TailRadius(const ConstructionRun& run, int level, int k);

// Target heights of the level following the deepest constructed one.
LevelTargets NextLevelTargets(const ConstructionRun& run);

}  // namespace dioexp

#endif  // DIOEXP_CONSTRUCTION_HPP_
