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

#ifndef DIOEXP_TARGET_POINT_HPP_
#define DIOEXP_TARGET_POINT_HPP_

#include <string>

#include "dioexp/numeric.hpp"

namespace dioexp {

enum class Provenance { kLiteral, kAlgebraic, kContinuedFraction, kConstructedRun };

const char* ProvenanceName(Provenance p);

// The target (alpha, beta) is only known to lie in the closed sup-norm ball
// of `radius` around the exact rational center.
struct TargetPoint {
  Rat alpha;
  Rat beta;
  Rat radius;
  Provenance provenance = Provenance::kLiteral;
  std::string label;

  // Half-width of the axis-aligned box containing every admissible target.
  Rat BoxBound() const;
};

}  // namespace dioexp

#endif  // DIOEXP_TARGET_POINT_HPP_
