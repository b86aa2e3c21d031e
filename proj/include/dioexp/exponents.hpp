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

#ifndef DIOEXP_EXPONENTS_HPP_
#define DIOEXP_EXPONENTS_HPP_

#include <string>
#include <string_view>

#include "dioexp/numeric.hpp"

namespace dioexp {

// Exact rational or a signed infinity.
class ExtendedReal {
 public:
  enum class Kind { kFinite, kPosInf, kNegInf };

  ExtendedReal() = default;
  ExtendedReal(const Rat& v) : value_(v) {}  // NOLINT: implicit by design of the API
  ExtendedReal(long v) : value_(v) {}        // NOLINT
  static ExtendedReal PosInf() { return ExtendedReal(Kind::kPosInf); }
  static ExtendedReal NegInf() { return ExtendedReal(Kind::kNegInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::kFinite; }
  bool IsPosInf() const { return kind_ == Kind::kPosInf; }
  // Only meaningful when finite().
  const Rat& value() const { return value_; }
  int Sign() const;

  // "inf", "-inf", or the exact rational.
  std::string ToString() const;
  // Accepts "inf", "+inf", "infinity", "-inf", or a rational.
  static ExtendedReal Parse(std::string_view text);

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b);
  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b);

 private:
  explicit ExtendedReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::kFinite;
  Rat value_;
};

// Omega(Theta) = (omega(Theta), omega(tTheta), omega_hat(Theta), omega_hat(tTheta)).
struct ExponentQuadruple {
  ExtendedReal v;        // ordinary exponent, linear form
  ExtendedReal v_prime;  // ordinary exponent, simultaneous
  ExtendedReal w;        // uniform exponent, linear form
  ExtendedReal w_prime;  // uniform exponent, simultaneous

  std::string ToString() const;
  // "v,v',w,w'" with rationals or "inf".
  static ExponentQuadruple Parse(std::string_view text);
  friend bool operator==(const ExponentQuadruple&, const ExponentQuadruple&) = default;
};

}  // namespace dioexp

#endif  // DIOEXP_EXPONENTS_HPP_
