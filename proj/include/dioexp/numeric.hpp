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

#ifndef DIOEXP_NUMERIC_HPP_
#define DIOEXP_NUMERIC_HPP_

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dioexp {

using Int = mpz_class;
using Rat = mpq_class;

enum class ErrorCode {
  kZeroTriple,
  kIndexOutOfRun,
  kPerfectSquareInput,
  kTargetTooCoarse,
  kRationalDependence,
  kProportionalTriples,
  kPreconditionViolated,
  kInvalidParams,
  kExcludedExtremalCase,
  kInitialHeightTooSmall,
  kCertificateViolation,
  kResourceGuard,
  kBadInput,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure in the library is reported through this exception; `code()`
// identifies the failure class and `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

Rat MakeRat(const Int& num, const Int& den);

// Accepts "p", "p/q", and plain decimals such as "-0.125" or "1e-3".
Rat ParseRational(std::string_view text);
Int ParseInteger(std::string_view text);

// Integers print bare, everything else as "p/q".
std::string ToString(const Rat& value);
std::string ToString(const Int& value);

Int Floor(const Rat& value);
Int Ceil(const Rat& value);
Rat Abs(const Rat& value);
Int Abs(const Int& value);

// ceil(base^exponent) for base >= 1 and exponent >= 0, computed exactly with
// integer roots.
Int CeilPower(const Int& base, const Rat& exponent);

// Floor of the square root.
Int ISqrt(const Int& value);
bool IsPerfectSquare(const Int& value);

// Closed interval of doubles, rounded outward from a higher-precision
// computation. Unbounded ends use +/-infinity.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const;
  double width() const { return hi - lo; }
  bool defined() const { return lo == lo && hi == hi; }
  static Enclosure Undefined() {
    return {std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::quiet_NaN()};
  }
};

// Encloses -log(v) / log(n) for v in [value_lo, value_hi] (value_lo >= 0) and
// an integer n >= 2. A zero lower value gives an unbounded upper end.
Enclosure NegLogRatio(const Rat& value_lo, const Rat& value_hi, const Int& n);

// Encloses log10(v) for v > 0.
Enclosure Log10(const Rat& value);

// Decimal rendering with outward rounding ("down" or "up"), `digits`
// significant digits in scientific notation.
std::string DecimalDown(const Rat& value, int digits);
std::string DecimalUp(const Rat& value, int digits);

}  // namespace dioexp

#endif  // DIOEXP_NUMERIC_HPP_
