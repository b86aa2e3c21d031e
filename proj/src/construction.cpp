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

#include "dioexp/construction.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace dioexp {

namespace {

[[noreturn]] void Reject(const std::string& inequality, const std::string& detail = "") {
  throw InvalidParamsError(ErrorCode::kInvalidParams, inequality, detail);
}

[[noreturn]] void RejectExtremal(const std::string& inequality, const std::string& family) {
  throw InvalidParamsError(
      ErrorCode::kExcludedExtremalCase, inequality,
      "excluded extremal family " + family +
          "; Jarnik has established these quadruples by separate continued-fraction "
          "constructions, which this generator does not reproduce");
}

// ---------------------------------------------------------------------------
// Lattice of integer points on a line.

// Some basis of {X : <X, line> = 0} for a primitive line triple.
std::pair<Vec3, Vec3> InitialBasis(const Vec3& line) {
  const Int &r = line.x, &s = line.y, &t = line.z;
  if (r == 0 && s == 0) return {Vec3{1, 0, 0}, Vec3{0, 1, 0}};
  Int g, a, b;
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
  Vec3 v1{s / g, -r / g, 0};
  Vec3 v2{-t * a, -t * b, g};
  return {v1, v2};
}

// Integer mu minimising |b - mu a| in the sup norm. The function is convex
// in mu, so the first mu with a non-negative forward difference is a minimum.
Int BestMultiple(const Vec3& a, const Vec3& b) {
  auto slope = [&](const Int& mu) -> Int { return (b - (mu + 1) * a).Norm() - (b - mu * a).Norm(); };
  Int aa = Dot(a, a);
  Int mu0 = Floor(MakeRat(2 * Dot(a, b) + aa, 2 * aa));
  Int lo, hi, step = 1;
  if (slope(mu0) >= 0) {
    hi = mu0;
    lo = mu0 - step;
    while (slope(lo) >= 0) {
      hi = lo;
      step *= 2;
      lo = mu0 - step;
    }
  } else {
    lo = mu0;
    hi = mu0 + step;
    while (slope(hi) < 0) {
      lo = hi;
      step *= 2;
      hi = mu0 + step;
    }
  }
  // slope(lo) < 0 <= slope(hi).
  while (hi - lo > 1) {
    Int mid = lo + (hi - lo) / 2;
    if (slope(mid) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Ordering key for picking canonical basis vectors among equally short
// ones: sup norm, then l1 norm, then fewer negative coordinates, then
// lexicographically larger first.
struct VectorKey {
  Int sup, l1;
  int negatives;
  Vec3 v;
  bool operator<(const VectorKey& o) const {
    if (sup != o.sup) return sup < o.sup;
    if (l1 != o.l1) return l1 < o.l1;
    if (negatives != o.negatives) return negatives < o.negatives;
    return LexLess(o.v, v);
  }
};

VectorKey KeyOf(const Vec3& v) {
  int neg = (v.x < 0) + (v.y < 0) + (v.z < 0);
  return {v.Norm(), Abs(v.x) + Abs(v.y) + Abs(v.z), neg, v};
}

// ---------------------------------------------------------------------------
// Chains on a carrier (a line for points, a point for lines).

struct ChainNames {
  const char* start;    // "q0" or "h0"
  const char* carrier;  // "h" or "q"
  const char* target;   // "q" or "h"
};

constexpr ChainNames kPointChain{"q0", "h", "q"};
constexpr ChainNames kLineChain{"h0", "q", "h"};

[[noreturn]] void Violated(const std::string& what) {
  throw Error(ErrorCode::kPreconditionViolated, "precondition violated: " + what);
}

std::vector<Vec3> ContinuedFractionChain(const Vec3& carrier, const Vec3& start,
                                         std::span<const Rat> targets, const LineBasis& basis,
                                         const ChainNames& names) {
  const std::string t = names.target;
  if (Dot(carrier, start) != 0) Violated(std::string("start triple incident to carrier"));
  if (targets.empty()) return {};
  const Int h = carrier.Norm();
  const Int q0 = start.Norm();
  if (targets[0] < Rat(14 * q0)) Violated(t + "1 >= 14*" + names.start);
  if (Rat(q0) * targets[0] < Rat(4 * h)) {
    Violated(std::string(names.start) + "*" + t + "1 >= 4*" + names.carrier);
  }
  for (std::size_t k = 1; k < targets.size(); ++k) {
    if (targets[k] < 3 * targets[k - 1]) {
      Violated(t + std::to_string(k + 1) + " >= 3*" + t + std::to_string(k));
    }
  }

  // start = m A + n B.
  const Vec3& A = basis.a;
  const Vec3& B = basis.b;
  Vec3 det = Wedge(A, B);
  Vec3 mw = Wedge(start, B);
  Vec3 nw = Wedge(A, start);
  const Int& d = det.x != 0 ? det.x : (det.y != 0 ? det.y : det.z);
  const Int& dm = det.x != 0 ? mw.x : (det.y != 0 ? mw.y : mw.z);
  const Int& dn = det.x != 0 ? nw.x : (det.y != 0 ? nw.y : nw.z);
  Int m = dm / d;
  Int n = dn / d;
  if (!(m * A + n * B == start)) {
    throw Error(ErrorCode::kCertificateViolation, "start triple is not in the carrier lattice");
  }

  // e, f with m f - n e = 1 and |f| minimal.
  Int e, f;
  if (n == 0) {
    f = m;  // m = +-1
    e = 0;
  } else {
    Int abs_n = Abs(n);
    Int residue;
    Int m_mod = m % abs_n;
    if (m_mod < 0) m_mod += abs_n;
    if (abs_n == 1) {
      residue = 0;
    } else if (mpz_invert(residue.get_mpz_t(), m_mod.get_mpz_t(), abs_n.get_mpz_t()) == 0) {
      throw Error(ErrorCode::kCertificateViolation, "start triple is not primitive");
    }
    f = (2 * residue > abs_n) ? Int(residue - abs_n) : residue;
    e = (m * f - 1) / n;
  }

  std::vector<Vec3> chain;
  chain.reserve(targets.size());
  Int g1 = Ceil(targets[0] / Rat(q0));
  chain.push_back(g1 * start + e * A + f * B);
  for (std::size_t k = 1; k < targets.size(); ++k) {
    const Vec3& prev = chain[k - 1];
    const Vec3& prev2 = k >= 2 ? chain[k - 2] : start;
    Int g = Ceil(targets[k] / Rat(prev.Norm()));
    chain.push_back(g * prev + prev2);
  }
  return chain;
}

}  // namespace

const char* ModeName(Mode mode) {
  switch (mode) {
    case Mode::kFinite: return "finite";
    case Mode::kVInfinite: return "v-infinite";
    case Mode::kAllInfinite: return "all-infinite";
  }
  return "unknown";
}

Mode ParseMode(std::string_view text) {
  if (text == "finite") return Mode::kFinite;
  if (text == "v-infinite") return Mode::kVInfinite;
  if (text == "all-infinite") return Mode::kAllInfinite;
  throw Error(ErrorCode::kBadInput, "unknown mode '" + std::string(text) + "'");
}

LineBasis ReducedLineBasis(const ProjectiveLine& line) {
  const Vec3& delta = line.coords.vec();
  auto [a, b] = InitialBasis(delta);
  // Gauss reduction in the sup norm.
  while (true) {
    if (a.Norm() > b.Norm()) std::swap(a, b);
    Vec3 reduced = b - BestMultiple(a, b) * a;
    if (reduced.Norm() < a.Norm()) {
      b = a;
      a = reduced;
    } else {
      b = reduced;
      break;
    }
  }
  const Int lambda1 = a.Norm();
  const Int lambda2 = b.Norm();
  std::vector<VectorKey> shortest, second;
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      Vec3 v = Int(i) * a + Int(j) * b;
      if (v.IsZero()) continue;
      Vec3 canonical = Normalize(v).vec();
      if (!(canonical == v)) continue;
      Int nv = v.Norm();
      if (nv == lambda1) shortest.push_back(KeyOf(v));
      if (nv == lambda2) second.push_back(KeyOf(v));
    }
  }
  Vec3 best_a = std::min_element(shortest.begin(), shortest.end())->v;
  std::sort(second.begin(), second.end());
  for (const VectorKey& cand : second) {
    if (cand.v == best_a) continue;
    Vec3 w = Wedge(best_a, cand.v);
    if (w == delta || w == -delta) return {best_a, cand.v, line};
  }
  throw Error(ErrorCode::kCertificateViolation, "basis reduction lost the lattice");
}

bool IsValidLineBasis(const LineBasis& basis) {
  const Vec3& d = basis.line.coords.vec();
  if (Dot(basis.a, d) != 0 || Dot(basis.b, d) != 0) return false;
  Vec3 w = Wedge(basis.a, basis.b);
  if (!(w == d || w == -d)) return false;
  Int na = basis.a.Norm(), nb = basis.b.Norm(), h = d.Norm();
  return na <= nb && na * na * nb * nb <= 3 * h * h;
}

std::vector<ProjectivePoint> PointChain(const ProjectiveLine& line, const ProjectivePoint& p0,
                                         std::span<const Rat> q_targets) {
  return PointChain(line, p0, q_targets, ReducedLineBasis(line));
}

std::vector<ProjectivePoint> PointChain(const ProjectiveLine& line, const ProjectivePoint& p0,
                                         std::span<const Rat> q_targets,
                                         const LineBasis& basis) {
  std::vector<ProjectivePoint> out;
  for (const Vec3& v : ContinuedFractionChain(line.coords.vec(), p0.coords.vec(), q_targets,
                                              basis, kPointChain)) {
    out.push_back(PointOf(v));
  }
  return out;
}

std::vector<ProjectiveLine> LineChain(const ProjectivePoint& point, const ProjectiveLine& line0,
                                        std::span<const Rat> h_targets) {
  // Lines through a point are the points of the dual line with the same
  // coordinates.
  ProjectiveLine dual_carrier{point.coords};
  LineBasis basis = ReducedLineBasis(dual_carrier);
  std::vector<ProjectiveLine> out;
  for (const Vec3& v : ContinuedFractionChain(point.coords.vec(), line0.coords.vec(), h_targets,
                                              basis, kLineChain)) {
    out.push_back(LineOf(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schedules.

namespace {

void CheckFinite(const ConstructionParams& p) {
  const Rat& w = p.w;
  const Rat& t0 = p.tau0;
  const Rat& t1 = p.tau1;
  const Rat& s = p.sigma;
  if (w == 2 && t0 > 0 && t0 == t1 && s == 2 * t0) {
    RejectExtremal("tau0 < tau1", "w = 2, tau0 = tau1, sigma = 2*tau0");
  }
  if (w == 2 && t0 > 0 && t0 < 1 && t1 == 1 && s == 1 + t0) {
    RejectExtremal("sigma < w - 1 + tau0", "w = 2, tau1 = 1, sigma = 1 + tau0");
  }
  if (w < 2) Reject("w >= 2");
  if (t0 <= 0) Reject("0 < tau0");
  if (t0 >= t1) Reject("tau0 < tau1");
  if (t1 > 1) Reject("tau1 <= 1");
  if (w * t0 > s) Reject("w*tau0 <= sigma");
  if (s > t0 + t1) Reject("sigma <= tau0 + tau1");
  if (s >= w - 1 + t0) Reject("sigma < w - 1 + tau0");
}

// tau_k = min(1, tau0 + k (tau1 - tau0)) until it reaches 1.
std::vector<Rat> TauSequence(const Rat& t0, const Rat& t1) {
  std::vector<Rat> tau{t0};
  Rat step = t1 - t0;
  while (tau.back() < 1) {
    Rat next = tau.back() + step;
    tau.push_back(next < 1 ? next : Rat(1));
  }
  return tau;
}

// sigma_0 = sigma, sigma_1 = w, then the largest steps allowed by
// sigma_{k+1} <= sigma_k (w - 1 + tau0) / sigma until sigma / tau0.
std::vector<Rat> SigmaSequence(const Rat& w, const Rat& t0, const Rat& s) {
  std::vector<Rat> sigma{s, w};
  const Rat end = s / t0;
  const Rat factor = (w - 1 + t0) / s;
  while (sigma.back() < end) {
    Rat next = sigma.back() * factor;
    sigma.push_back(next < end ? next : end);
  }
  return sigma;
}

void CheckSequences(const LevelSchedule& ls, const Rat& w, const Rat& s) {
  const Rat& t0 = ls.tau.front();
  const Rat bound7 = (w - 1 + ls.tau[1]) / t0;
  if (ls.tau.back() != 1) Reject("tau_l = 1", "schedule construction");
  for (std::size_t k = 0; k + 1 < ls.tau.size(); ++k) {
    if (ls.tau[k] >= ls.tau[k + 1]) Reject("tau_k < tau_{k+1}", "schedule construction");
    if ((w - 1 + ls.tau[k + 1]) / ls.tau[k] > bound7) {
      Reject("(w - 1 + tau_{k+1}) / tau_k <= (w - 1 + tau1) / tau0", "schedule construction");
    }
  }
  if (ls.sigma.back() != s / t0) Reject("sigma_l' = sigma / tau0", "schedule construction");
  for (std::size_t k = 0; k + 1 < ls.sigma.size(); ++k) {
    if (ls.sigma[k] >= ls.sigma[k + 1]) Reject("sigma_k < sigma_{k+1}", "schedule construction");
    if ((ls.sigma[k + 1] - 1) * s > (w - 1) * ls.sigma[k]) {
      Reject("(sigma_{k+1} - 1) / sigma_k <= (w - 1) / sigma", "schedule construction");
    }
  }
}

}  // namespace

LevelSchedule Schedule::ForLevel(int n) const {
  if (params.mode == Mode::kFinite) {
    LevelSchedule ls = fixed;
    ls.n = n;
    return ls;
  }
  return InfiniteSchedule(params.mode, params.w, params.v_prime, n);
}

int FirstInfiniteLevel(Mode mode, const Rat& w, const ExtendedReal& v_prime) {
  switch (mode) {
    case Mode::kFinite:
      return 1;
    case Mode::kVInfinite: {
      if (v_prime.finite()) {
        // n > w / sigma with sigma = (w - 1) / v'.
        Rat bound = w * v_prime.value() / (w - 1);
        long n = Floor(bound).get_si() + 1;
        return static_cast<int>(std::max(3L, n));
      }
      long n = Ceil(w).get_si();
      return static_cast<int>(std::max(2L, n));
    }
    case Mode::kAllInfinite:
      return 4;
  }
  return 1;
}

LevelSchedule InfiniteSchedule(Mode mode, const Rat& w, const ExtendedReal& v_prime, int n) {
  LevelSchedule ls;
  ls.n = n;
  const Rat tau0 = MakeRat(1, n);
  ls.tau = {tau0, Rat(1)};
  if (mode == Mode::kAllInfinite) {
    if (n < 4) Reject("n >= 4");
    Rat wn(ISqrt(Int(n)));
    Rat wnext(ISqrt(Int(n + 1)));
    ls.sigma = {wn / n, wnext};
    return ls;
  }
  if (mode != Mode::kVInfinite) Reject("an infinite mode");
  if (w < 2) Reject("w >= 2");
  if (!v_prime.finite()) {
    if (Rat(n) < w) Reject("n >= w");
    ls.sigma = {w / n, w};
    return ls;
  }
  const Rat& vp = v_prime.value();
  if (vp < w - 1) Reject("v' >= w - 1");
  const Rat sigma = (w - 1) / vp;
  if (Rat(n) * sigma <= w) Reject("n > w/sigma");
  // Arithmetic ramp from w to the next level's sigma_0 / tau_0 = (n + 1) sigma
  // with steps below 1.
  const Rat end = (n + 1) * sigma;
  int l_prime = n;
  Rat step = (end - w) / (l_prime - 1);
  while (step >= 1) {
    ++l_prime;
    step = (end - w) / (l_prime - 1);
  }
  ls.sigma = {sigma};
  for (int k = 1; k <= l_prime; ++k) ls.sigma.push_back(w + (k - 1) * step);
  return ls;
}

Schedule BuildSchedule(const ConstructionParams& params) {
  Schedule schedule;
  schedule.params = params;
  switch (params.mode) {
    case Mode::kFinite: {
      CheckFinite(params);
      LevelSchedule ls;
      ls.n = 1;
      ls.tau = TauSequence(params.tau0, params.tau1);
      ls.sigma = SigmaSequence(params.w, params.tau0, params.sigma);
      CheckSequences(ls, params.w, params.sigma);
      schedule.fixed = ls;
      schedule.first_level = 1;
      break;
    }
    case Mode::kVInfinite: {
      if (params.w < 2) Reject("w >= 2");
      if (params.v_prime.finite() && params.v_prime.value() < params.w - 1) {
        Reject("v' >= w - 1");
      }
      schedule.first_level = FirstInfiniteLevel(params.mode, params.w, params.v_prime);
      break;
    }
    case Mode::kAllInfinite:
      schedule.first_level = FirstInfiniteLevel(params.mode, params.w, params.v_prime);
      break;
  }
  return schedule;
}

ExponentQuadruple PredictQuadruple(const ConstructionParams& params) {
  const Rat& w = params.w;
  switch (params.mode) {
    case Mode::kFinite:
      CheckFinite(params);
      return {ExtendedReal((w - 1 + params.tau1) / params.tau0),
              ExtendedReal((w - 1) / params.sigma), ExtendedReal(w), ExtendedReal((w - 1) / w)};
    case Mode::kVInfinite:
      if (params.w < 2) Reject("w >= 2");
      return {ExtendedReal::PosInf(), params.v_prime, ExtendedReal(w),
              ExtendedReal((w - 1) / w)};
    case Mode::kAllInfinite:
      return {ExtendedReal::PosInf(), ExtendedReal::PosInf(), ExtendedReal::PosInf(),
              ExtendedReal(Rat(1))};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Heights.

double EstimateDigits(const Schedule& schedule, const Int& h1, int depth) {
  double log_h = std::log10(std::max(2.0, h1.get_d()));
  double digits = log_h;
  for (int i = 0; i <= depth; ++i) {
    LevelSchedule ls = schedule.ForLevel(schedule.first_level + i);
    double next = log_h / ls.tau.front().get_d();
    double top = next * std::max(ls.sigma.back().get_d(), 1.0);
    digits = std::max(digits, top);
    log_h = next;
  }
  return digits;
}

std::vector<LevelTargets> LevelHeights(const Schedule& schedule, const Int& h1, int depth) {
  if (depth < 1) throw Error(ErrorCode::kBadInput, "depth must be at least 1");
  if (h1 < 2) throw Error(ErrorCode::kBadInput, "h1 must be at least 2");
  std::vector<LevelSchedule> sched;
  std::vector<Int> H{h1};
  for (int i = 0; i <= depth; ++i) {
    sched.push_back(schedule.ForLevel(schedule.first_level + i));
    H.push_back(CeilPower(H.back(), 1 / sched.back().tau.front()));
  }
  auto q_of = [&](int i, const Rat& sigma) {
    return Ceil(Rat(CeilPower(H[i + 1], sigma)) / 16);
  };
  std::vector<LevelTargets> out;
  for (int i = 0; i < depth; ++i) {
    const LevelSchedule& ls = sched[i];
    LevelTargets t;
    t.level = i + 1;
    t.n = ls.n;
    t.h_n = H[i];
    t.h_next = H[i + 1];
    t.h.push_back(H[i]);
    for (int k = 1; k < ls.l(); ++k) t.h.push_back(CeilPower(H[i + 1], ls.tau[k]));
    t.h.push_back(H[i + 1]);
    for (int k = 0; k < ls.l_prime(); ++k) t.q.push_back(q_of(i, ls.sigma[k]));
    t.q.push_back(q_of(i + 1, sched[i + 1].sigma.front()));
    out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::string> ValidateLevels(std::span<const LevelTargets> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const LevelTargets& t = levels[i];
    const std::string at = " at level " + std::to_string(t.level);
    Int line_lo, line_hi, point_lo, point_hi;
    if (i == 0) {
      // Seed line (h1, -1, 0) and point (1, h1, q_{1,0}).
      line_lo = line_hi = t.h_n;
      point_lo = point_hi = t.h_n > t.q[0] ? t.h_n : t.q[0];
    } else {
      line_lo = Ceil(MakeRat(t.h_n, 2));
      line_hi = 2 * t.h_n;
      point_lo = Ceil(MakeRat(t.q[0], 2));
      point_hi = 2 * t.q[0];
    }
    if (i == 0 && t.q[0] <= 2 * t.h_n) {
      return "q_{1,0} > 2 h_1 (seed point inside the central square)" + at;
    }
    const Int next_line_hi = 2 * t.h_next;
    if (t.h.size() > 1) {
      if (t.h[1] < 14 * line_hi) return "h_{n,1} >= 14 H(Delta_{n,0})" + at;
      if (line_lo * t.h[1] < 4 * point_hi) return "H(Delta_{n,0}) h_{n,1} >= 4 H(P_{n,0})" + at;
      for (std::size_t k = 1; k + 1 < t.h.size(); ++k) {
        if (t.h[k + 1] < 3 * t.h[k]) return "h_{n,k+1} >= 3 h_{n,k}" + at;
      }
    }
    if (t.q.size() > 1) {
      if (t.q[1] < 14 * point_hi) return "q_{n,1} >= 14 H(P_{n,0})" + at;
      if (point_lo * t.q[1] < 4 * next_line_hi) {
        return "H(P_{n,0}) q_{n,1} >= 4 H(Delta_{n+1,0})" + at;
      }
      for (std::size_t k = 1; k + 1 < t.q.size(); ++k) {
        if (t.q[k + 1] < 3 * t.q[k]) return "q_{n,k+1} >= 3 q_{n,k}" + at;
      }
    }
  }
  return std::nullopt;
}

Int MinimalInitialHeight(const Schedule& schedule, int depth) {
  // Later levels only get easier as heights grow; three levels decide.
  const int probe = std::min(depth, 3);
  auto ok = [&](const Int& h1) {
    if (EstimateDigits(schedule, h1, probe) > 1.0e6) return false;
    auto levels = LevelHeights(schedule, h1, probe);
    return !ValidateLevels(levels).has_value();
  };
  for (long h = 2; h <= 4096; ++h) {
    if (ok(Int(h))) return Int(h);
  }
  for (Int h = 8192; h < Int(1) << 40; h *= 2) {
    if (ok(h)) return h;
  }
  throw Error(ErrorCode::kResourceGuard, "no admissible initial height below 2^40");
}

// ---------------------------------------------------------------------------
// Runs.

const ProjectivePoint& ConstructionRun::Point(int level, int k) const {
  const int depth_now = static_cast<int>(levels.size());
  if (level >= 1 && level <= depth_now && k >= 0 &&
      k < static_cast<int>(levels[level - 1].points.size())) {
    return levels[level - 1].points[k];
  }
  if (level == depth_now + 1 && k == 0 && depth_now > 0) return levels.back().points.back();
  throw Error(ErrorCode::kIndexOutOfRun, "no point P(" + std::to_string(level) + "," +
                                             std::to_string(k) + ") in this run");
}

const ProjectiveLine& ConstructionRun::Line(int level, int k) const {
  const int depth_now = static_cast<int>(levels.size());
  if (level >= 1 && level <= depth_now && k >= 0 &&
      k < static_cast<int>(levels[level - 1].lines.size())) {
    return levels[level - 1].lines[k];
  }
  if (level == depth_now + 1 && k == 0 && depth_now > 0) return levels.back().lines.back();
  throw Error(ErrorCode::kIndexOutOfRun, "no line Delta(" + std::to_string(level) + "," +
                                             std::to_string(k) + ") in this run");
}

LevelTargets NextLevelTargets(const ConstructionRun& run) {
  const LevelTargets& last = run.levels.back().targets;
  LevelSchedule ls = run.schedule.ForLevel(last.n + 1);
  LevelTargets t;
  t.level = last.level + 1;
  t.n = last.n + 1;
  t.h_n = last.h_next;
  t.h_next = CeilPower(t.h_n, 1 / ls.tau.front());
  t.h.push_back(t.h_n);
  for (int k = 1; k < ls.l(); ++k) t.h.push_back(CeilPower(t.h_next, ls.tau[k]));
  t.h.push_back(t.h_next);
  // Only the first two point heights are needed for tail estimates.
  for (int k = 0; k <= std::min(1, ls.l_prime()); ++k) {
    t.q.push_back(Ceil(Rat(CeilPower(t.h_next, ls.sigma[k])) / 16));
  }
  return t;
}

namespace {

// Formula part of the tail radius: 64 h_{n+1} / (q_{n,k} q_{n,k+1}).
Rat FormulaTail(const LevelTargets& t, int k) {
  return Rat(64 * t.h_next) / Rat(t.q[k] * t.q[k + 1]);
}

}  // namespace

Rat TailRadius(const ConstructionRun& run, int level, int k) {
  const int depth = static_cast<int>(run.levels.size());
  const LevelTargets next = NextLevelTargets(run);
  const Rat final_tail = FormulaTail(next, 0);
  if (level == depth + 1 && k == 0) return final_tail;
  const ProjectivePoint& start = run.Point(level, k);  // validates the index
  if (k >= static_cast<int>(run.levels[level - 1].targets.q.size()) - 1) {
    throw Error(ErrorCode::kIndexOutOfRun, "target index must precede the level end");
  }
  Rat formula = FormulaTail(run.levels[level - 1].targets, k);
  // Composite bound: d(P_0, T) <= sum_j 2^j d(P_j, P_{j+1}) + 2^m d(P_m, T).
  Rat composite = 0;
  Rat weight = 1;
  const ProjectivePoint* prev = &start;
  int li = level, ki = k + 1;
  while (true) {
    if (ki >= static_cast<int>(run.levels[li - 1].points.size())) {
      ++li;
      ki = 1;
      if (li > depth) break;
    }
    const ProjectivePoint& cur = run.levels[li - 1].points[ki];
    composite += weight * DistPoints(*prev, cur);
    weight *= 2;
    prev = &cur;
    ++ki;
  }
  composite += weight * final_tail;
  return formula > composite ? formula : composite;
}

namespace {

constexpr long kSoftBand = 16;

class CertificateList {
 public:
  void Le(const std::string& name, const std::string& index, const Rat& lhs, const Rat& rhs) {
    out_.push_back({name, index, lhs, rhs, "<=", lhs <= rhs, true});
  }
  void Eq(const std::string& name, const std::string& index, const Rat& lhs, const Rat& rhs) {
    out_.push_back({name, index, lhs, rhs, "==", lhs == rhs, true});
  }
  // Soft ratios are expected within [1/kSoftBand, kSoftBand].
  void Soft(const std::string& name, const std::string& index, const Rat& ratio) {
    const Rat band(kSoftBand);
    out_.push_back({name, index, ratio, band, "ratio", ratio <= band && ratio * band >= 1, false});
  }
  std::vector<Certificate> Take() { return std::move(out_); }

 private:
  std::vector<Certificate> out_;
};

std::string Idx(int level, int k) {
  return "(" + std::to_string(level) + "," + std::to_string(k) + ")";
}

std::string Idx2(int level, int k, int k2) {
  return "(" + std::to_string(level) + "," + std::to_string(k) + "," + std::to_string(k2) + ")";
}

Rat WedgeNorm(const Vec3& a, const Vec3& b) { return Rat(Wedge(a, b).Norm()); }

}  // namespace

std::vector<Certificate> ComputeCertificates(const ConstructionRun& run) {
  CertificateList c;
  const int depth = static_cast<int>(run.levels.size());
  for (int i = 1; i <= depth; ++i) {
    const ConstructionLevel& lv = run.levels[i - 1];
    const LevelTargets& t = lv.targets;
    const int l = static_cast<int>(lv.lines.size()) - 1;
    const int lp = static_cast<int>(lv.points.size()) - 1;
    if (l + 1 != static_cast<int>(t.h.size()) || lp + 1 != static_cast<int>(t.q.size())) {
      throw Error(ErrorCode::kCertificateViolation,
                  "level " + std::to_string(i) + " has the wrong number of triples");
    }

    // Height windows.
    for (int k = 0; k <= l; ++k) {
      Rat H(lv.lines[k].coords.Height());
      c.Le("line height lower", Idx(i, k), Rat(t.h[k]) / 2, H);
      c.Le("line height upper", Idx(i, k), H, Rat(2 * t.h[k]));
    }
    for (int k = 0; k <= lp; ++k) {
      Rat H(lv.points[k].coords.Height());
      c.Le("point height lower", Idx(i, k), Rat(t.q[k]) / 2, H);
      c.Le("point height upper", Idx(i, k), H, Rat(2 * t.q[k]));
    }

    // Incidences: every line passes through P_{n,0}, every point lies on
    // Delta_{n,l}.
    const Vec3& p0 = lv.points[0].coords.vec();
    const Vec3& carrier = lv.lines[l].coords.vec();
    for (int k = 0; k <= l; ++k) {
      c.Eq("line through P_{n,0}", Idx(i, k), Rat(Abs(Dot(lv.lines[k].coords.vec(), p0))), 0);
    }
    for (int k = 0; k <= lp; ++k) {
      c.Eq("point on Delta_{n,l}", Idx(i, k), Rat(Abs(Dot(lv.points[k].coords.vec(), carrier))),
           0);
    }

    // Branching.
    if (i < depth) {
      const ConstructionLevel& nx = run.levels[i];
      c.Eq("branching Delta_{n,l} = Delta_{n+1,0}", Idx(i, l),
           WedgeNorm(carrier, nx.lines[0].coords.vec()), 0);
      c.Eq("branching P_{n,l'} = P_{n+1,0}", Idx(i, lp),
           WedgeNorm(lv.points[lp].coords.vec(), nx.points[0].coords.vec()), 0);
    }

    // Point distances on the carrier line, with heights q_0 = H(P_{n,0}).
    const Rat h(carrier.Norm());
    std::vector<Rat> qs{Rat(lv.points[0].coords.Height())};
    for (int k = 1; k <= lp; ++k) qs.push_back(Rat(t.q[k]));
    for (int k = 0; k <= lp; ++k) {
      for (int k2 = k + 1; k2 <= lp; ++k2) {
        Rat d = DistPoints(lv.points[k], lv.points[k2]);
        Rat Hk(lv.points[k].coords.Height()), Hk2(lv.points[k2].coords.Height());
        c.Le("point distance lower", Idx2(i, k, k2), h / (32 * qs[k] * qs[k + 1]), d);
        c.Le("point distance upper", Idx2(i, k, k2), d, 16 * h / (qs[k] * qs[k + 1]));
        c.Le("point Liouville", Idx2(i, k, k2), h / (Hk * Hk2), d);
      }
    }
    for (int k = 0; k < lp; ++k) {
      Rat d = DistPoints(lv.points[k], lv.points[k + 1]);
      c.Soft("consecutive point distance ratio", Idx(i, k),
             d * Rat(t.q[k] * t.q[k + 1]) / Rat(t.h_next));
      c.Soft("point size ratio", Idx(i, k),
             SimultaneousAtCenter(lv.points[k].coords.vec(), run.target) * Rat(t.q[k + 1]) /
                 Rat(t.h_next));
    }
    // L(Delta_{n,k}) against h_{n+1} / (h_{n,k+1} q_{n,1}).
    if (lp >= 1) {
      for (int k = 0; k < l; ++k) {
        c.Soft("line size ratio", Idx(i, k),
               LinearFormAtCenter(lv.lines[k].coords.vec(), run.target) *
                   Rat(t.h[k + 1] * t.q[1]) / Rat(t.h_next));
      }
    }

    // Line distances through P_{n,0}, with heights h_0 = H(Delta_{n,0}).
    const Rat q(p0.Norm());
    std::vector<Rat> hs{Rat(lv.lines[0].coords.Height())};
    for (int k = 1; k <= l; ++k) hs.push_back(Rat(t.h[k]));
    for (int k = 0; k <= l; ++k) {
      for (int k2 = k + 1; k2 <= l; ++k2) {
        Rat d = DistLines(lv.lines[k], lv.lines[k2]);
        Rat Hk(lv.lines[k].coords.Height()), Hk2(lv.lines[k2].coords.Height());
        c.Le("line distance lower", Idx2(i, k, k2), q / (32 * hs[k] * hs[k + 1]), d);
        c.Le("line distance upper", Idx2(i, k, k2), d, 16 * q / (hs[k] * hs[k + 1]));
        c.Le("line Liouville", Idx2(i, k, k2), q / (Hk * Hk2), d);
      }
    }
  }

  // The target center is the deepest point and sits in the central square.
  const ProjectivePoint& last = run.Point(depth + 1, 0);
  auto image = AffineImage(last);
  Rat half(1, 2);
  c.Le("target in central square", "alpha", Abs(image[0]), half);
  c.Le("target in central square", "beta", Abs(image[1]), half);
  c.Le("target radius", Idx(depth + 1, 0), TailRadius(run, depth + 1, 0), run.target.radius);
  return c.Take();
}

ConstructionRun RunConstruction(const ConstructionParams& params, const Int& h1, int depth,
                                const RunOptions& options) {
  ConstructionRun run;
  run.params = params;
  run.schedule = BuildSchedule(params);
  run.predicted = PredictQuadruple(params);
  run.h1 = h1;
  run.depth = depth;
  if (depth < 1) throw Error(ErrorCode::kBadInput, "depth must be at least 1");
  if (h1 < 2) throw Error(ErrorCode::kBadInput, "h1 must be at least 2");
  const double digits = EstimateDigits(run.schedule, h1, depth);
  if (digits > options.digit_budget) {
    throw Error(ErrorCode::kResourceGuard,
                "depth " + std::to_string(depth) + " needs about " +
                    std::to_string(static_cast<long long>(digits)) +
                    " digits, above the budget of " +
                    std::to_string(static_cast<long long>(options.digit_budget)));
  }
  std::vector<LevelTargets> targets = LevelHeights(run.schedule, h1, depth);

  auto too_small = [&](const std::string& what) -> Error {
    std::string hint;
    try {
      hint = "; try h1 >= " + ToString(MinimalInitialHeight(run.schedule, depth));
    } catch (const Error&) {
    }
    return Error(ErrorCode::kInitialHeightTooSmall,
                 "initial height " + ToString(h1) + " too small: " + what + hint);
  };
  if (auto bad = ValidateLevels(std::span<const LevelTargets>(targets).first(1))) {
    if (!options.seed) throw too_small(*bad);
  }

  Vec3 line_seed{h1, -1, 0};
  Vec3 point_seed{1, h1, targets[0].q[0]};
  if (options.seed) std::tie(line_seed, point_seed) = *options.seed;
  ProjectiveLine line0 = LineOf(line_seed);
  ProjectivePoint point0 = PointOf(point_seed);
  if (Dot(line0.coords.vec(), point0.coords.vec()) != 0) {
    throw Error(ErrorCode::kPreconditionViolated, "seed point does not lie on the seed line");
  }

  for (int i = 0; i < depth; ++i) {
    ConstructionLevel lv;
    lv.targets = targets[i];
    lv.schedule = run.schedule.ForLevel(targets[i].n);
    std::vector<Rat> h_targets, q_targets;
    for (std::size_t k = 1; k < lv.targets.h.size(); ++k) h_targets.emplace_back(lv.targets.h[k]);
    for (std::size_t k = 1; k < lv.targets.q.size(); ++k) q_targets.emplace_back(lv.targets.q[k]);
    lv.lines.push_back(line0);
    lv.points.push_back(point0);
    try {
      for (auto& ln : LineChain(point0, line0, h_targets)) lv.lines.push_back(ln);
      for (auto& pt : PointChain(lv.lines.back(), point0, q_targets)) lv.points.push_back(pt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPreconditionViolated) throw;
      throw too_small(std::string(e.what()) + " at level " + std::to_string(i + 1));
    }
    line0 = lv.lines.back();
    point0 = lv.points.back();
    run.levels.push_back(std::move(lv));
  }

  auto image = AffineImage(run.Point(depth + 1, 0));
  run.target.alpha = image[0];
  run.target.beta = image[1];
  run.target.radius = TailRadius(run, depth + 1, 0);
  run.target.provenance = Provenance::kConstructedRun;
  run.target.label = "run:" + std::string(ModeName(params.mode)) + "#" +
                     std::to_string(depth + 1) + ",0";

  run.certificates = ComputeCertificates(run);
  for (const Certificate& cert : run.certificates) {
    if (cert.hard && !cert.holds) {
      throw Error(ErrorCode::kCertificateViolation,
                  "certificate " + cert.name + " " + cert.index + " fails: " + ToString(cert.lhs) +
                      " " + cert.relation + " " + ToString(cert.rhs));
    }
  }
  return run;
}

}  // namespace dioexp
