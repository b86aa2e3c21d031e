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

#include "dioexp/best_approx.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

namespace dioexp {

namespace {

using i128 = __int128;

// Fixed-point scale of the L kernel. With |alpha|, |beta| <= 2^8 every
// coefficient fits in 63 bits, so the scan loop runs on 64-bit remainders;
// products with norms up to 2^21 stay far below 2^127.
constexpr int kFracBits = 54;
constexpr long kMaxKernelNorm = 1L << 21;
constexpr long kMaxKernelCoef = 1L << 8;

i128 ToFixed(const Rat& v) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, kFracBits);
  Int s = Floor(v * Rat(scale) + Rat(1, 2));
  Int mag = Abs(s);
  if (mpz_sizeinbase(mag.get_mpz_t(), 2) > 120) {
    throw Error(ErrorCode::kResourceGuard, "coordinate too large for the search kernel");
  }
  static_assert(sizeof(mp_limb_t) == 8);
  unsigned __int128 u = 0;
  const std::size_t limbs = mpz_size(mag.get_mpz_t());
  if (limbs > 0) u = mpz_getlimbn(mag.get_mpz_t(), 0);
  if (limbs > 1) u |= static_cast<unsigned __int128>(mpz_getlimbn(mag.get_mpz_t(), 1)) << 64;
  i128 r = static_cast<i128>(u);
  return s < 0 ? -r : r;
}

i128 FloorDiv(i128 a, i128 b) {  // b > 0
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

struct Candidate {
  std::int64_t x, y, z;
  i128 fixed;  // fixed-point value, unused by the M kernel
};

// Candidates of one shell whose value may be the shell minimum.
struct ShellResult {
  std::vector<Candidate> candidates;
};

class Collector {
 public:
  Collector(i128 start, i128 slack) : best_(start), slack_(slack), threshold_(start + slack) {}
  i128 threshold() const { return threshold_; }
  void Add(std::int64_t x, std::int64_t y, std::int64_t z, i128 v) {
    if (v > threshold_) return;
    if (v < best_) {
      best_ = v;
      threshold_ = v + slack_;
    }
    out_.push_back({x, y, z, v});
  }
  i128 best() const { return best_; }
  std::vector<Candidate> Finish() {
    std::erase_if(out_, [&](const Candidate& c) { return c.fixed > threshold_; });
    return std::move(out_);
  }

 private:
  i128 best_;
  i128 slack_;
  i128 threshold_;
  std::vector<Candidate> out_;
};

// Scans u in [u_lo, u_hi]; for each u offers the t in [t_lo, t_hi]
// minimising |c0 + u p + t q|. Only the remainder of -(c0 + u p) modulo q is
// tracked; the quotient is recomputed for the rare u that pass the
// threshold. Clamping t into range never lowers the value below
// min(r, q - r), so the remainder test is a safe filter.
template <typename Emit>
void ScanLine(i128 c0, i128 p, std::int64_t u_lo, std::int64_t u_hi, i128 q, std::int64_t t_lo,
              std::int64_t t_hi, Collector& col, Emit emit) {
  if (u_lo > u_hi || t_lo > t_hi) return;
  int sign = 1;
  if (q < 0) {
    q = -q;
    sign = -1;
    std::swap(t_lo, t_hi);
    t_lo = -t_lo;
    t_hi = -t_hi;
  }
  // With N = -(c0 + u p) the value at t' is |t' q - N|, and t = sign * t'.
  const i128 n0 = -(c0 + static_cast<i128>(u_lo) * p);
  const auto q64 = static_cast<std::uint64_t>(q);
  const auto p_rem = static_cast<std::uint64_t>(p - FloorDiv(p, q) * q);
  auto r = static_cast<std::uint64_t>(n0 - FloorDiv(n0, q) * q);
  for (std::int64_t u = u_lo; u <= u_hi; ++u) {
    const auto thr = static_cast<std::uint64_t>(col.threshold());
    if (r <= thr || q64 - r <= thr) {
      const i128 n = -(c0 + static_cast<i128>(u) * p);
      const i128 t = FloorDiv(n, q);
      const i128 ta = std::clamp<i128>(t, t_lo, t_hi);
      const i128 tb = std::clamp<i128>(t + 1, t_lo, t_hi);
      auto offer = [&](i128 tt) {
        i128 v = tt * q - n;
        if (v < 0) v = -v;
        if (v <= col.threshold()) emit(u, static_cast<std::int64_t>(sign * tt), v, col);
      };
      offer(ta);
      if (tb != ta) offer(tb);
    }
    const std::uint64_t d = r - p_rem;
    r = r < p_rem ? d + q64 : d;
  }
}

struct KernelL {
  i128 a, b, one;

  // `bound` is a fixed-point value no smaller than the best value of the
  // earlier shells minus their rounding; it is lowered as shells finish.
  ShellResult Shell(std::int64_t h, i128& bound) const {
    // Fixed-point values are within h + 2 units of the exact center value.
    const i128 slack = 2 * (static_cast<i128>(h) + 2);
    Collector col(bound, slack);
    const i128 H = h;
    auto add_xy = [h](std::int64_t u, std::int64_t t, i128 v, Collector& c) { c.Add(u, t, h, v); };
    auto add_yx = [h](std::int64_t u, std::int64_t t, i128 v, Collector& c) { c.Add(t, u, h, v); };
    // z = h, any x, y: solve for the coordinate with the larger coefficient.
    if (a != 0 || b != 0) {
      if ((b < 0 ? -b : b) >= (a < 0 ? -a : a)) {
        ScanLine(H * one, a, -h, h, b, -h, h, col, add_xy);
      } else {
        ScanLine(H * one, b, -h, h, a, -h, h, col, add_yx);
      }
    }
    // x = h, |z| < h, any y.
    ScanLine(H * a, b, -h, h, one, -h + 1, h - 1, col,
             [h](std::int64_t u, std::int64_t t, i128 v, Collector& c) { c.Add(h, u, t, v); });
    // y = h, |x| < h, |z| < h.
    ScanLine(H * b, a, -h + 1, h - 1, one, -h + 1, h - 1, col,
             [h](std::int64_t u, std::int64_t t, i128 v, Collector& c) { c.Add(u, h, t, v); });
    if (col.best() < bound) bound = col.best();
    return {col.Finish()};
  }
};

struct KernelM {
  const TargetPoint* target;
  i128 one = 0;  // unused; the M kernel evaluates exactly

  // Integers z in (-h, h) with |z c - h| < 1.
  static std::pair<Int, Int> NearMultiple(const Rat& c, const Int& h) {
    if (c == 0) return {Int(1), Int(0)};
    Rat lo = (Rat(h) - 1) / c;
    Rat hi = (Rat(h) + 1) / c;
    if (lo > hi) std::swap(lo, hi);
    Int first = Floor(lo) + 1;
    Int last = Ceil(hi) - 1;
    if (first < -h + 1) first = -h + 1;
    if (last > h - 1) last = h - 1;
    return {first, last};
  }

  static void Around(const Rat& v, const Int& lim_lo, const Int& lim_hi, std::vector<Int>& out) {
    out.clear();
    Int f = Floor(v);
    for (const Int& c : {f, Int(f + 1)}) {
      if (c >= lim_lo && c <= lim_hi) out.push_back(c);
    }
  }

  ShellResult Shell(std::int64_t h64, i128& /*bound*/) const {
    const Rat& al = target->alpha;
    const Rat& be = target->beta;
    const Int h(static_cast<long>(h64));
    std::vector<Candidate> out;
    std::vector<Int> xs, ys;
    auto push = [&](const Int& x, const Int& y, const Int& z) {
      out.push_back({x.get_si(), y.get_si(), z.get_si(), 0});
    };
    // z = h.
    Around(Rat(h) * al, -h, h, xs);
    Around(Rat(h) * be, -h, h, ys);
    for (const Int& x : xs) {
      for (const Int& y : ys) push(x, y, h);
    }
    // x = h, |z| < h.
    auto [z1, z2] = NearMultiple(al, h);
    for (Int z = z1; z <= z2; ++z) {
      Around(Rat(z) * be, -h, h, ys);
      for (const Int& y : ys) push(h, y, z);
    }
    // y = h, |x| < h, |z| < h.
    auto [w1, w2] = NearMultiple(be, h);
    for (Int z = w1; z <= w2; ++z) {
      Around(Rat(z) * al, -h + 1, h - 1, xs);
      for (const Int& x : xs) push(x, h, z);
    }
    return {std::move(out)};
  }
};

Rat CenterValue(Which which, const Vec3& X, const TargetPoint& t) {
  return which == Which::kL ? LinearFormAtCenter(X, t) : SimultaneousAtCenter(X, t);
}

// Largest possible interval half-width of a triple of norm n.
Rat WidthBound(Which which, const Int& n, const Rat& radius) {
  return which == Which::kL ? Rat(2 * n) * radius : Rat(n) * radius;
}

template <typename Kernel>
std::vector<ShellResult> ScanShells(const Kernel& kernel, std::int64_t h_max, int workers) {
  std::vector<ShellResult> shells(static_cast<std::size_t>(h_max) + 1);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(h_max)));
  auto run = [&](int w) {
    i128 bound = kernel.one;
    for (std::int64_t h = 1 + w; h <= h_max; h += workers) shells[h] = kernel.Shell(h, bound);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  return shells;
}

}  // namespace

const char* WhichName(Which which) { return which == Which::kL ? "L" : "M"; }

Which ParseWhich(std::string_view text) {
  if (text == "L" || text == "l") return Which::kL;
  if (text == "M" || text == "m") return Which::kM;
  throw Error(ErrorCode::kBadInput, "seminorm must be L or M, got '" + std::string(text) + "'");
}

ErrorInterval Seminorm(Which which, const Vec3& X, const TargetPoint& target) {
  return which == Which::kL ? SeminormL(X, target) : SeminormM(X, target);
}

ExponentTrace BruteForceMinima(const TargetPoint& target, const Int& h_max, Which which,
                               int workers) {
  if (h_max < 1) throw Error(ErrorCode::kBadInput, "H_max must be positive");
  if (h_max > kMaxKernelNorm) {
    throw Error(ErrorCode::kResourceGuard, "H_max above the kernel limit 2^21");
  }
  const std::int64_t hm = h_max.get_si();
  std::vector<ShellResult> shells;
  if (which == Which::kL) {
    if (Abs(target.alpha) > kMaxKernelCoef || Abs(target.beta) > kMaxKernelCoef) {
      throw Error(ErrorCode::kResourceGuard, "target coordinates above the kernel limit 256");
    }
    KernelL kernel{ToFixed(target.alpha), ToFixed(target.beta), static_cast<i128>(1) << kFracBits};
    shells = ScanShells(kernel, hm, workers);
  } else {
    shells = ScanShells(KernelM{&target}, hm, workers);
  }

  // Sequential merge: a record is a strict improvement of the center value.
  std::vector<ApproxRecord> records;
  Rat record_value = 1;
  bool certifying = true;
  for (std::int64_t h = 1; h <= hm; ++h) {
    const Int H(static_cast<long>(h));
    std::optional<std::pair<Rat, Vec3>> best;
    for (const Candidate& c : shells[h].candidates) {
      Vec3 X = Normalize(Vec3{Int(static_cast<long>(c.x)), Int(static_cast<long>(c.y)),
                              Int(static_cast<long>(c.z))})
                   .vec();
      Rat v = CenterValue(which, X, target);
      if (!best || v < best->first || (v == best->first && LexLess(X, best->second))) {
        best.emplace(v, X);
      }
    }
    if (!best || best->first >= record_value) continue;
    ErrorInterval value = Seminorm(which, best->second, target);
    if (value.lo == 0 && value.hi == 0) {
      throw Error(ErrorCode::kRationalDependence,
                  "triple " + best->second.ToString() + " has value exactly 0");
    }
    if (certifying) {
      Rat floor_value = record_value - WidthBound(which, H - 1, target.radius);
      certifying = floor_value > value.hi;
      if (!certifying && records.empty()) {
        throw Error(ErrorCode::kTargetTooCoarse,
                    "target radius " + DecimalUp(target.radius, 3) +
                        " cannot certify the first minimal point " + best->second.ToString());
      }
    }
    records.push_back({Normalize(best->second), H, value, certifying});
    record_value = best->first;
  }
  return MakeExponentTrace(which, std::move(records));
}

ExponentTrace MakeExponentTrace(Which which, std::vector<ApproxRecord> records) {
  ExponentTrace trace;
  trace.which = which;
  trace.records = std::move(records);
  const std::size_t n = trace.records.size();
  for (std::size_t i = 0; i < n; ++i) {
    const ApproxRecord& r = trace.records[i];
    trace.v_seq.push_back(r.norm >= 2 ? NegLogRatio(r.value.lo, r.value.hi, r.norm)
                                      : Enclosure::Undefined());
    trace.w_seq.push_back(i + 1 < n ? NegLogRatio(r.value.lo, r.value.hi, trace.records[i + 1].norm)
                                    : Enclosure::Undefined());
  }
  return trace;
}

ExponentSummary Summarize(const ExponentTrace& trace, int window) {
  ExponentSummary s;
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    if (trace.records[i].certified && trace.v_seq[i].defined() && trace.w_seq[i].defined()) {
      usable.push_back(i);
    }
  }
  const std::size_t take = std::min<std::size_t>(usable.size(), std::max(window, 0));
  s.window = static_cast<int>(take);
  if (take == 0) {
    s.omega = s.omega_hat = Enclosure::Undefined();
    return s;
  }
  const double inf = std::numeric_limits<double>::infinity();
  s.omega = {-inf, -inf};
  s.omega_hat = {inf, inf};
  for (std::size_t j = usable.size() - take; j < usable.size(); ++j) {
    const Enclosure& v = trace.v_seq[usable[j]];
    const Enclosure& w = trace.w_seq[usable[j]];
    s.omega = {std::max(s.omega.lo, v.lo), std::max(s.omega.hi, v.hi)};
    s.omega_hat = {std::min(s.omega_hat.lo, w.lo), std::min(s.omega_hat.hi, w.hi)};
  }
  return s;
}

ProjectivePoint DualPointFromLines(const ApproxRecord& a, const ApproxRecord& b) {
  return Meet(ProjectiveLine{a.triple}, ProjectiveLine{b.triple});
}

ProjectiveLine DualLineFromPoints(const ApproxRecord& a, const ApproxRecord& b) {
  return Join(ProjectivePoint{a.triple}, ProjectivePoint{b.triple});
}

namespace {

std::string FormatDouble(double v) {
  if (!(v == v)) return "";
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string TraceCsv(const ExponentTrace& trace, int digits) {
  std::string out = "n,x,y,z,norm,value_lo,value_hi,v_n,w_n,certified\n";
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const ApproxRecord& r = trace.records[i];
    out += std::to_string(i + 1) + "," + r.triple.x().get_str() + "," + r.triple.y().get_str() +
           "," + r.triple.z().get_str() + "," + r.norm.get_str() + "," +
           DecimalDown(r.value.lo, digits) + "," + DecimalUp(r.value.hi, digits) + "," +
           FormatDouble(trace.v_seq[i].mid()) + "," + FormatDouble(trace.w_seq[i].mid()) + "," +
           (r.certified ? "true" : "false") + "\n";
  }
  return out;
}

std::string PlotCsv(const ExponentTrace& trace) {
  std::string out = "log10_norm,log10_value\n";
  for (const ApproxRecord& r : trace.records) {
    Rat center = (r.value.lo + r.value.hi) / 2;
    if (center <= 0) continue;
    out += FormatDouble(Log10(Rat(r.norm)).mid()) + "," + FormatDouble(Log10(center).mid()) + "\n";
  }
  return out;
}

std::string SummaryLine(const ExponentSummary& summary, Which which) {
  const char* hat = which == Which::kL ? "omega_hat" : "omega_hat'";
  const char* ord = which == Which::kL ? "omega" : "omega'";
  return std::string(hat) + " in [" + FormatDouble(summary.omega_hat.lo) + ", " +
         FormatDouble(summary.omega_hat.hi) + "] (width " +
         FormatDouble(summary.omega_hat.width()) + "), " + ord + " in [" +
         FormatDouble(summary.omega.lo) + ", " + FormatDouble(summary.omega.hi) + "] (width " +
         FormatDouble(summary.omega.width()) + "), window " + std::to_string(summary.window);
}

std::string PlotSidecarJson(const ExponentTrace& trace, const TargetPoint& target,
                            const ExponentSummary& summary) {
  auto enclosure = [](const Enclosure& e) {
    return nlohmann::ordered_json{{"lo", FormatDouble(e.lo)},
                                  {"hi", FormatDouble(e.hi)},
                                  {"width", FormatDouble(e.width())}};
  };
  nlohmann::ordered_json doc;
  doc["x"] = "log10 norm";
  doc["y"] = "log10 value";
  doc["seminorm"] = WhichName(trace.which);
  doc["target"] = target.label;
  doc["records"] = trace.records.size();
  doc["window"] = summary.window;
  doc["omega_hat"] = enclosure(summary.omega_hat);
  doc["omega"] = enclosure(summary.omega);
  return doc.dump(2) + "\n";
}

}  // namespace dioexp
