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

#include "dioexp/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace dioexp {

int ExtendedReal::Sign() const {
  switch (kind_) {
    case Kind::kPosInf: return 1;
    case Kind::kNegInf: return -1;
    case Kind::kFinite: return sgn(value_);
  }
  return 0;
}

std::string ExtendedReal::ToString() const {
  switch (kind_) {
    case Kind::kPosInf: return "inf";
    case Kind::kNegInf: return "-inf";
    case Kind::kFinite: return dioexp::ToString(value_);
  }
  return "?";
}

ExtendedReal ExtendedReal::Parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (s == "inf" || s == "+inf" || s == "infinity" || s == "+infinity") return PosInf();
  if (s == "-inf" || s == "-infinity") return NegInf();
  return ExtendedReal(ParseRational(s));
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.finite() || a.value_ == b.value_;
}

bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
  auto rank = [](const ExtendedReal& x) {
    return x.kind_ == ExtendedReal::Kind::kNegInf ? 0 : x.finite() ? 1 : 2;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  return a.finite() && a.value_ < b.value_;
}

ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.finite() && b.finite()) return ExtendedReal(Rat(a.value_ - b.value_));
  if (!a.finite() && !b.finite() && a.kind_ == b.kind_) {
    throw Error(ErrorCode::kBadInput, "indeterminate difference of equal infinities");
  }
  if (!a.finite()) return a;
  return b.IsPosInf() ? ExtendedReal::NegInf() : ExtendedReal::PosInf();
}

std::string ExponentQuadruple::ToString() const {
  return "(" + v.ToString() + ", " + v_prime.ToString() + ", " + w.ToString() + ", " +
         w_prime.ToString() + ")";
}

ExponentQuadruple ExponentQuadruple::Parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](char c) { return c == '(' || c == ')' || c == ' '; }),
          s.end());
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4) {
    throw Error(ErrorCode::kBadInput, "quadruple needs four components: '" + s + "'");
  }
  return {ExtendedReal::Parse(parts[0]), ExtendedReal::Parse(parts[1]),
          ExtendedReal::Parse(parts[2]), ExtendedReal::Parse(parts[3])};
}

}  // namespace dioexp
