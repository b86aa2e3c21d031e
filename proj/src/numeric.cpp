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

#include "dioexp/numeric.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace dioexp {

namespace {

constexpr mpfr_prec_t kLogPrecision = 256;

// Minimal RAII holder for an mpfr_t.
class Mpfr {
 public:
  Mpfr() { mpfr_init2(value_, kLogPrecision); }
  ~Mpfr() { mpfr_clear(value_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

// log(v) rounded in direction `rnd`; v > 0.
void LogRounded(Mpfr& out, const Rat& v, mpfr_rnd_t rnd) {
  Mpfr x;
  mpfr_set_q(x.get(), v.get_mpq_t(), rnd);
  mpfr_log(out.get(), x.get(), rnd);
}

std::string Decimal(const Rat& value, int digits, mpfr_rnd_t rnd) {
  Mpfr x;
  mpfr_set_q(x.get(), value.get_mpq_t(), rnd);
  char* buffer = nullptr;
  const char* format = rnd == MPFR_RNDD ? "%.*RDe" : "%.*RUe";
  mpfr_asprintf(&buffer, format, digits - 1, x.get());
  std::string result(buffer);
  mpfr_free_str(buffer);
  return result;
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroTriple: return "ZeroTriple";
    case ErrorCode::kIndexOutOfRun: return "IndexOutOfRun";
    case ErrorCode::kPerfectSquareInput: return "PerfectSquareInput";
    case ErrorCode::kTargetTooCoarse: return "TargetTooCoarse";
    case ErrorCode::kRationalDependence: return "RationalDependence";
    case ErrorCode::kProportionalTriples: return "ProportionalTriples";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kExcludedExtremalCase: return "ExcludedExtremalCase";
    case ErrorCode::kInitialHeightTooSmall: return "InitialHeightTooSmall";
    case ErrorCode::kCertificateViolation: return "CertificateViolation";
    case ErrorCode::kResourceGuard: return "ResourceGuard";
    case ErrorCode::kBadInput: return "BadInput";
  }
  return "Unknown";
}

Rat MakeRat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int ParseInteger(std::string_view text) {
  Int result;
  std::string s(text);
  if (s.empty() || result.set_str(s, 10) != 0) {
    throw Error(ErrorCode::kBadInput, "not an integer: '" + s + "'");
  }
  return result;
}

Rat ParseRational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error(ErrorCode::kBadInput, "empty rational");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Int num = ParseInteger(s.substr(0, slash));
    Int den = ParseInteger(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::kBadInput, "zero denominator: '" + s + "'");
    return MakeRat(num, den);
  }
  // Decimal with optional exponent.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    if (s[pos] == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits.push_back(s[pos]);
      if (seen_point) ++frac_digits;
    } else {
      throw Error(ErrorCode::kBadInput, "not a rational: '" + s + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::kBadInput, "not a rational: '" + s + "'");
  long exponent = 0;
  if (pos < s.size()) {
    char* end = nullptr;
    std::string tail = s.substr(pos + 1);
    exponent = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0') {
      throw Error(ErrorCode::kBadInput, "bad exponent: '" + s + "'");
    }
  }
  Int num(digits, 10);
  if (negative) num = -num;
  long scale = exponent - frac_digits;
  Int ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  return scale >= 0 ? Rat(num * ten_pow) : MakeRat(num, ten_pow);
}

std::string ToString(const Rat& value) { return value.get_str(10); }
std::string ToString(const Int& value) { return value.get_str(10); }

Int Floor(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int Ceil(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rat Abs(const Rat& value) { return value < 0 ? Rat(-value) : value; }
Int Abs(const Int& value) { return value < 0 ? Int(-value) : value; }

Int CeilPower(const Int& base, const Rat& exponent) {
  if (base < 1 || exponent < 0) {
    throw Error(ErrorCode::kBadInput, "CeilPower needs base >= 1 and exponent >= 0");
  }
  const Int& p = exponent.get_num();
  const Int& q = exponent.get_den();
  if (!p.fits_ulong_p() || !q.fits_ulong_p()) {
    throw Error(ErrorCode::kResourceGuard, "exponent too large: " + ToString(exponent));
  }
  Int raised;
  mpz_pow_ui(raised.get_mpz_t(), base.get_mpz_t(), p.get_ui());
  Int root;
  int exact = mpz_root(root.get_mpz_t(), raised.get_mpz_t(), q.get_ui());
  return exact ? root : Int(root + 1);
}

Int ISqrt(const Int& value) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

bool IsPerfectSquare(const Int& value) {
  return value >= 0 && mpz_perfect_square_p(value.get_mpz_t()) != 0;
}

double Enclosure::mid() const {
  if (std::isinf(hi) && !std::isinf(lo)) return hi;
  return 0.5 * (lo + hi);
}

Enclosure NegLogRatio(const Rat& value_lo, const Rat& value_hi, const Int& n) {
  if (n < 2 || value_lo < 0 || value_hi < value_lo) return Enclosure::Undefined();
  Rat n_rat(n);
  // Denominator log(n) > 0 as an interval [d_lo, d_hi].
  Mpfr d_lo, d_hi;
  LogRounded(d_lo, n_rat, MPFR_RNDD);
  LogRounded(d_hi, n_rat, MPFR_RNDU);
  // Numerator -log(v): lower end from value_hi, upper end from value_lo.
  Mpfr a_lo, a_hi;
  LogRounded(a_lo, value_hi, MPFR_RNDU);
  mpfr_neg(a_lo.get(), a_lo.get(), MPFR_RNDD);
  if (value_lo == 0) {
    mpfr_set_inf(a_hi.get(), 1);
  } else {
    LogRounded(a_hi, value_lo, MPFR_RNDD);
    mpfr_neg(a_hi.get(), a_hi.get(), MPFR_RNDU);
  }
  // Quotient of [a_lo, a_hi] by the positive interval [d_lo, d_hi].
  Mpfr t1, t2, q_lo, q_hi;
  mpfr_div(t1.get(), a_lo.get(), d_lo.get(), MPFR_RNDD);
  mpfr_div(t2.get(), a_lo.get(), d_hi.get(), MPFR_RNDD);
  mpfr_min(q_lo.get(), t1.get(), t2.get(), MPFR_RNDD);
  mpfr_div(t1.get(), a_hi.get(), d_lo.get(), MPFR_RNDU);
  mpfr_div(t2.get(), a_hi.get(), d_hi.get(), MPFR_RNDU);
  mpfr_max(q_hi.get(), t1.get(), t2.get(), MPFR_RNDU);
  return {mpfr_get_d(q_lo.get(), MPFR_RNDD), mpfr_get_d(q_hi.get(), MPFR_RNDU)};
}

Enclosure Log10(const Rat& value) {
  if (value <= 0) return Enclosure::Undefined();
  Mpfr x, lo, hi;
  mpfr_set_q(x.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_log10(lo.get(), x.get(), MPFR_RNDD);
  mpfr_set_q(x.get(), value.get_mpq_t(), MPFR_RNDU);
  mpfr_log10(hi.get(), x.get(), MPFR_RNDU);
  return {mpfr_get_d(lo.get(), MPFR_RNDD), mpfr_get_d(hi.get(), MPFR_RNDU)};
}

std::string DecimalDown(const Rat& value, int digits) {
  return Decimal(value, digits, MPFR_RNDD);
}

std::string DecimalUp(const Rat& value, int digits) {
  return Decimal(value, digits, MPFR_RNDU);
}

}  // namespace dioexp
