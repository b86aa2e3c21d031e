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

#ifndef DIOEXP_BEST_APPROX_HPP_
#define DIOEXP_BEST_APPROX_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dioexp/geometry.hpp"
#include "dioexp/numeric.hpp"
#include "dioexp/target_point.hpp"

namespace dioexp {

// L is the linear form |x alpha + y beta + z|, M the simultaneous
// approximation max(|z alpha - x|, |z beta - y|).
enum class Which { kL, kM };

const char* WhichName(Which which);
Which ParseWhich(std::string_view text);

// Enclosure of L or M at every point of the target ball.
ErrorInterval Seminorm(Which which, const Vec3& X, const TargetPoint& target);

struct ApproxRecord {
  IntegerTriple triple;
  Int norm;
  ErrorInterval value;
  // Every nonzero triple of smaller norm is provably worse at every point of
  // the target ball.
  bool certified = false;
};

struct ExponentTrace {
  Which which = Which::kL;
  std::vector<ApproxRecord> records;
  // v_n = -log(value_n) / log(norm_n), w_n = -log(value_n) / log(norm_{n+1});
  // undefined entries for norm 1 and for the last record's w.
  std::vector<Enclosure> v_seq;
  std::vector<Enclosure> w_seq;
};

// Minimal points up to norm h_max, found shell by shell. Records are
// strict improvements of the center value; certification follows the
// target radius and stops at the first record it cannot certify.
// `workers` only changes speed, never the result.
ExponentTrace BruteForceMinima(const TargetPoint& target, const Int& h_max, Which which,
                               int workers = 1);

// Attaches v_n and w_n enclosures (computed from the records' value
// intervals) to a record sequence.
ExponentTrace MakeExponentTrace(Which which, std::vector<ApproxRecord> records);

struct ExponentSummary {
  Enclosure omega;      // max v_n over the window
  Enclosure omega_hat;  // min w_n over the window
  int window = 0;       // records actually used
};

// Estimates over the last `window` certified records with defined
// exponents; a window larger than the trace uses the whole trace.
ExponentSummary Summarize(const ExponentTrace& trace, int window);

// Q_n: the point where consecutive best-approximation lines meet.
ProjectivePoint DualPointFromLines(const ApproxRecord& a, const ApproxRecord& b);
// D_n: the line through consecutive best-approximation points.
ProjectiveLine DualLineFromPoints(const ApproxRecord& a, const ApproxRecord& b);

// Trace as CSV with columns n,x,y,z,norm,value_lo,value_hi,v_n,w_n,certified.
std::string TraceCsv(const ExponentTrace& trace, int digits = 17);
// (log10 norm, log10 value) pairs for plotting, plus a JSON sidecar naming
// the axes and target.
std::string PlotCsv(const ExponentTrace& trace);
// One-line rendering of a summary; the same strings appear in the sidecar.
std::string SummaryLine(const ExponentSummary& summary, Which which);
std::string PlotSidecarJson(const ExponentTrace& trace, const TargetPoint& target,
                            const ExponentSummary& summary);

}  // namespace dioexp

#endif  // DIOEXP_BEST_APPROX_HPP_
