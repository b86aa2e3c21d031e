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

#include "dioexp/target.hpp"

#include <string>

#include "dioexp/construction.hpp"
#include "dioexp/geometry.hpp"
#include "dioexp/run_io.hpp"

namespace dioexp {

namespace {

Rat PowerOfTen(int digits) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return Rat(p);
}

// Midpoint of the decimal interval containing the fractional part of sqrt(p).
Rat SqrtFraction(long p, int digits) {
  Rat scale = PowerOfTen(digits);
  Int s = ISqrt(Int(p) * scale.get_num() * scale.get_num());
  return Rat(2 * s + 1) / (2 * scale) - Rat(ISqrt(Int(p)));
}

Rat RoundTo(const Rat& value, int digits) {
  Rat scale = PowerOfTen(digits);
  return Rat(Floor(value * scale + Rat(1, 2))) / scale;
}

std::vector<std::string> SplitComma(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    parts.emplace_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

TargetPoint TargetQuadratic(long p, long q, int digits) {
  if (p <= 0 || q <= 0) throw Error(ErrorCode::kBadInput, "sqrt target needs positive integers");
  if (digits < 1) throw Error(ErrorCode::kBadInput, "sqrt target needs at least one digit");
  for (long v : {p, q}) {
    if (IsPerfectSquare(Int(v))) {
      throw Error(ErrorCode::kPerfectSquareInput, std::to_string(v) + " is a perfect square");
    }
  }
  if (IsPerfectSquare(Int(p) * Int(q))) {
    throw Error(ErrorCode::kPerfectSquareInput,
                std::to_string(p) + "*" + std::to_string(q) +
                    " is a perfect square, so 1, alpha, beta are dependent");
  }
  TargetPoint t;
  t.alpha = SqrtFraction(p, digits);
  t.beta = SqrtFraction(q, digits);
  t.radius = 1 / (2 * PowerOfTen(digits));
  t.provenance = Provenance::kAlgebraic;
  t.label = "sqrt:" + std::to_string(p) + "," + std::to_string(q);
  return t;
}

std::vector<int> FibonacciQuotients(int count) {
  std::vector<int> word{1};
  while (static_cast<int>(word.size()) < count) {
    std::vector<int> next;
    for (int letter : word) {
      if (letter == 1) {
        next.push_back(1);
        next.push_back(2);
      } else {
        next.push_back(1);
      }
    }
    word = std::move(next);
  }
  word.resize(std::max(count, 0));
  return word;
}

TargetPoint TargetFibonacciCf(int depth, int digits) {
  if (depth < 5) throw Error(ErrorCode::kPreconditionViolated, "Fibonacci depth must be >= 5");
  std::vector<int> a = FibonacciQuotients(depth + 1);
  // Convergents of [0; a_1, a_2, ...].
  Int p_prev = 1, p = 0, q_prev = 0, q = 1;
  for (int i = 0; i < depth; ++i) {
    Int pn = a[i] * p + p_prev;
    Int qn = a[i] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  Int q_next = a[depth] * q + q_prev;
  Rat c = MakeRat(p, q);
  Rat eps = MakeRat(1, q * q_next);
  Rat err_alpha = eps;
  Rat err_beta = eps * (2 * c + eps);
  TargetPoint t;
  t.alpha = c;
  t.beta = c * c;
  if (digits > 0) {
    Rat half_ulp = 1 / (2 * PowerOfTen(digits));
    t.alpha = RoundTo(t.alpha, digits);
    t.beta = RoundTo(t.beta, digits);
    err_alpha += half_ulp;
    err_beta += half_ulp;
  }
  t.radius = err_alpha > err_beta ? err_alpha : err_beta;
  t.provenance = Provenance::kContinuedFraction;
  t.label = "fib:" + std::to_string(depth);
  return t;
}

TargetPoint TargetFromRun(const ConstructionRun& run, int n, int k) {
  const ProjectivePoint& p = run.Point(n, k);
  TargetPoint t;
  auto image = AffineImage(p);
  t.alpha = image[0];
  t.beta = image[1];
  t.radius = TailRadius(run, n, k);
  t.provenance = Provenance::kConstructedRun;
  t.label = "run:" + std::string(ModeName(run.params.mode)) + "#" + std::to_string(n) + "," +
            std::to_string(k);
  return t;
}

TargetPoint ParseTarget(std::string_view spec, int digits) {
  std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kBadInput, "target '" + std::string(spec) + "' lacks a kind prefix");
  }
  std::string_view kind = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  try {
    if (kind == "sqrt") {
      auto parts = SplitComma(body);
      if (parts.size() != 2) throw Error(ErrorCode::kBadInput, "sqrt target needs p,q");
      return TargetQuadratic(ParseInteger(parts[0]).get_si(), ParseInteger(parts[1]).get_si(),
                             digits);
    }
    if (kind == "fib") {
      auto parts = SplitComma(body);
      int depth = static_cast<int>(ParseInteger(parts[0]).get_si());
      int fib_digits = parts.size() > 1 ? static_cast<int>(ParseInteger(parts[1]).get_si()) : 0;
      return TargetFibonacciCf(depth, fib_digits);
    }
    if (kind == "lit") {
      auto parts = SplitComma(body);
      if (parts.size() != 2 && parts.size() != 3) {
        throw Error(ErrorCode::kBadInput, "literal target needs alpha,beta[,radius]");
      }
      TargetPoint t;
      t.alpha = ParseRational(parts[0]);
      t.beta = ParseRational(parts[1]);
      t.radius = parts.size() == 3 ? ParseRational(parts[2]) : Rat(0);
      if (t.radius < 0) throw Error(ErrorCode::kBadInput, "radius must be non-negative");
      t.provenance = Provenance::kLiteral;
      t.label = "lit:" + std::string(body);
      return t;
    }
    if (kind == "run") {
      std::size_t hash = body.rfind('#');
      std::string path(body.substr(0, hash));
      ConstructionRun run = ReadRunFile(path);
      if (hash == std::string_view::npos) return run.target;
      auto parts = SplitComma(body.substr(hash + 1));
      if (parts.size() != 2) throw Error(ErrorCode::kBadInput, "run index needs n,k");
      return TargetFromRun(run, static_cast<int>(ParseInteger(parts[0]).get_si()),
                           static_cast<int>(ParseInteger(parts[1]).get_si()));
    }
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kBadInput, std::string("bad target: ") + e.what());
  }
  throw Error(ErrorCode::kBadInput, "unknown target kind '" + std::string(kind) + "'");
}

}  // namespace dioexp
