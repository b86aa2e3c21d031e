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

#ifndef DIOEXP_VERIFY_HPP_
#define DIOEXP_VERIFY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dioexp/construction.hpp"
#include "dioexp/exponents.hpp"
#include "dioexp/numeric.hpp"

namespace dioexp {

// One inequality or identity with its exact residual. For ">= 0" checks the
// residual is the slack; for "== 0" checks it must vanish.
struct CheckResult {
  std::string name;
  ExtendedReal residual;
  std::string relation;
  bool pass = false;
};

// w' - (w - 1)/w; w = inf expects w' = 1.
CheckResult CheckJarnik(const ExponentQuadruple& q);
// Lower v' - v(w - 1)/(v + w) and upper (v - w + 1)/w - v'.
std::pair<CheckResult, CheckResult> CheckRefinedTransference(const ExponentQuadruple& q);
// Lower v' - v/(v + 2) and upper (v - 1)/2 - v'.
std::pair<CheckResult, CheckResult> CheckKhintchine(const ExponentQuadruple& q);
// w - 2, v - w(w - 1), w' - 1/2, 1 - w', v' - w'^2/(1 - w').
std::vector<CheckResult> CheckCorollaries(const ExponentQuadruple& q);
// Every check above, in that order.
std::vector<CheckResult> CheckQuadruple(const ExponentQuadruple& q);

// lambda = max(1/(w - 1 + tau0), (sigma - tau0)/sigma),
// mu = max(sigma/((w - 1) tau0), (w - 1 + tau0)/tau0). Finite mode only.
std::pair<Rat, Rat> LambdaMu(const ConstructionParams& params);

// Exponents measured on the run's own triples at one level against the
// run's target: max/min over the level of -log L(Delta_{n,k}) / log H and
// -log M(P_{n,k}) / log H, using the next triple's height for the uniform
// exponents.
struct EmpiricalExponents {
  int level = 0;
  Enclosure v, v_prime, w, w_prime;
};
EmpiricalExponents RunEmpirical(const ConstructionRun& run, int level = 0);

struct CertifyOptions {
  int level = 0;  // 0 selects the deepest level
  Int foreign_hmax = 1000;
  Rat tolerance{15, 100};
  int workers = 1;
};

struct VerifierReport {
  std::vector<CheckResult> checks;
  std::optional<Rat> lambda, mu;
  std::optional<EmpiricalExponents> empirical;
  std::optional<ExponentQuadruple> predicted;
  std::vector<std::string> notes;
  bool AllPass() const;
};

// Re-verifies the stored certificates, measures exponents, compares them
// with the prediction, and scans for foreign minimal points up to
// foreign_hmax. Failures are recorded in the report, never thrown.
VerifierReport CertifyRun(const ConstructionRun& run, const CertifyOptions& options = {});
VerifierReport VerifyQuadruple(const ExponentQuadruple& q);

std::string ReportJson(const VerifierReport& report);

}  // namespace dioexp

#endif  // DIOEXP_VERIFY_HPP_
