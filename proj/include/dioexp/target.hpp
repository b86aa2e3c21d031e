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

#ifndef DIOEXP_TARGET_HPP_
#define DIOEXP_TARGET_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dioexp/numeric.hpp"
#include "dioexp/target_point.hpp"

namespace dioexp {

struct ConstructionRun;

// (sqrt(p) - floor(sqrt(p)), sqrt(q) - floor(sqrt(q))) to `digits` decimals.
// p and q must be positive non-squares whose product is not a square (otherwise
// 1, alpha, beta are linearly dependent over Q).
TargetPoint TargetQuadratic(long p, long q, int digits);

// Partial quotients a_1..a_count following the Fibonacci word over {1, 2}
// (substitution 1 -> 12, 2 -> 1, starting from 1): 1,2,1,1,2,1,2,1,...
std::vector<int> FibonacciQuotients(int count);

// (alpha, alpha^2) with alpha = [0; a_1, ..., a_depth, ...]. The center is the
// depth-th convergent (optionally rounded to `digits` decimals; 0 keeps the
// exact convergent). Requires depth >= 5.
TargetPoint TargetFibonacciCf(int depth, int digits = 0);

// Target centered at P_{n,k} of a construction run with the tail-bound
// radius. Valid indices: 1 <= n <= depth with 0 <= k < l'_n, and the deepest
// point (depth + 1, 0).
TargetPoint TargetFromRun(const ConstructionRun& run, int n, int k);

// Parses "sqrt:p,q", "fib:depth", "run:<file>#n,k" (or "run:<file>" for the
// deepest point), and "lit:a,b,radius" with rational components.
TargetPoint ParseTarget(std::string_view spec, int digits);

}  // namespace dioexp

#endif  // DIOEXP_TARGET_HPP_
