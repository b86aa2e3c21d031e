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

#include "dioexp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <set>

#include "dioexp/best_approx.hpp"
#include "dioexp/geometry.hpp"

namespace dioexp {

namespace {

using XR = ExtendedReal;

CheckResult AtLeastZero(std::string name, const XR& residual) {
  return {std::move(name), residual, ">= 0", residual.Sign() >= 0};
}

CheckResult EqualZero(std::string name, const XR& residual) {
  return {std::move(name), residual, "== 0", residual.Sign() == 0};
}

XR Verdict(bool ok) { return ok ? XR(Rat(0)) : XR::NegInf(); }

// Worst deviation of an enclosure from an exact value, or +inf when the
// enclosure is unbounded or undefined.
XR Deviation(const Enclosure& e, const Rat& target) {
  if (!e.defined() || std::isinf(e.lo) || std::isinf(e.hi)) return XR::PosInf();
  Rat lo(e.lo), hi(e.hi);
  Rat a = Abs(Rat(lo - target));
  Rat b = Abs(Rat(hi - target));
  return XR(a > b ? a : b);
}

Enclosure Max(const Enclosure& a, const Enclosure& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Enclosure Min(const Enclosure& a, const Enclosure& b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

}  // namespace

CheckResult CheckJarnik(const ExponentQuadruple& q) {
  XR expected = q.w.finite() ? XR(Rat((q.w.value() - 1) / q.w.value())) : XR(Rat(1));
  if (!q.w_prime.finite()) return EqualZero("jarnik", XR::PosInf());
  return EqualZero("jarnik", q.w_prime - expected);
}

std::pair<CheckResult, CheckResult> CheckRefinedTransference(const ExponentQuadruple& q) {
  const char* lo_name = "refined lower";
  const char* hi_name = "refined upper";
  if (!q.w.finite()) {
    XR r = Verdict(q.v.IsPosInf() && q.v_prime.IsPosInf());
    return {AtLeastZero(lo_name, r), AtLeastZero(hi_name, r)};
  }
  const Rat& w = q.w.value();
  if (!q.v.finite()) {
    XR lower = q.v_prime.IsPosInf() ? XR::PosInf() : q.v_prime - XR(Rat(w - 1));
    return {AtLeastZero(lo_name, lower), AtLeastZero(hi_name, XR::PosInf())};
  }
  const Rat& v = q.v.value();
  if (q.v_prime.IsPosInf()) {
    return {AtLeastZero(lo_name, XR::PosInf()), AtLeastZero(hi_name, XR::NegInf())};
  }
  XR lower = q.v_prime - XR(Rat(v * (w - 1) / (v + w)));
  XR upper = XR(Rat((v - w + 1) / w)) - q.v_prime;
  return {AtLeastZero(lo_name, lower), AtLeastZero(hi_name, upper)};
}

std::pair<CheckResult, CheckResult> CheckKhintchine(const ExponentQuadruple& q) {
  const char* lo_name = "khintchine lower";
  const char* hi_name = "khintchine upper";
  if (!q.v.finite()) {
    XR lower = q.v_prime.IsPosInf() ? XR::PosInf() : q.v_prime - XR(Rat(1));
    return {AtLeastZero(lo_name, lower), AtLeastZero(hi_name, XR::PosInf())};
  }
  const Rat& v = q.v.value();
  if (q.v_prime.IsPosInf()) {
    return {AtLeastZero(lo_name, XR::PosInf()), AtLeastZero(hi_name, XR::NegInf())};
  }
  XR lower = q.v_prime - XR(Rat(v / (v + 2)));
  XR upper = XR(Rat((v - 1) / 2)) - q.v_prime;
  return {AtLeastZero(lo_name, lower), AtLeastZero(hi_name, upper)};
}

std::vector<CheckResult> CheckCorollaries(const ExponentQuadruple& q) {
  std::vector<CheckResult> out;
  out.push_back(AtLeastZero("w >= 2", q.w.IsPosInf() ? XR::PosInf() : q.w - XR(Rat(2))));
  if (!q.w.finite()) {
    out.push_back(AtLeastZero("v >= w(w - 1)", Verdict(q.v.IsPosInf())));
  } else if (q.v.IsPosInf()) {
    out.push_back(AtLeastZero("v >= w(w - 1)", XR::PosInf()));
  } else {
    const Rat& w = q.w.value();
    out.push_back(AtLeastZero("v >= w(w - 1)", q.v - XR(Rat(w * (w - 1)))));
  }
  if (!q.w_prime.finite()) {
    out.push_back(AtLeastZero("w' >= 1/2", XR::PosInf()));
    out.push_back(AtLeastZero("w' <= 1", XR::NegInf()));
    out.push_back(AtLeastZero("v' >= w'^2/(1 - w')", XR::NegInf()));
    return out;
  }
  const Rat& wp = q.w_prime.value();
  out.push_back(AtLeastZero("w' >= 1/2", XR(Rat(wp - Rat(1, 2)))));
  out.push_back(AtLeastZero("w' <= 1", XR(Rat(1 - wp))));
  if (wp >= 1) {
    out.push_back(
        AtLeastZero("v' >= w'^2/(1 - w')", Verdict(wp == 1 && q.v_prime.IsPosInf())));
  } else if (q.v_prime.IsPosInf()) {
    out.push_back(AtLeastZero("v' >= w'^2/(1 - w')", XR::PosInf()));
  } else {
    out.push_back(AtLeastZero("v' >= w'^2/(1 - w')", q.v_prime - XR(Rat(wp * wp / (1 - wp)))));
  }
  return out;
}

std::vector<CheckResult> CheckQuadruple(const ExponentQuadruple& q) {
  std::vector<CheckResult> out{CheckJarnik(q)};
  auto [rl, ru] = CheckRefinedTransference(q);
  auto [kl, ku] = CheckKhintchine(q);
  out.insert(out.end(), {rl, ru, kl, ku});
  for (auto& c : CheckCorollaries(q)) out.push_back(std::move(c));
  return out;
}

std::pair<Rat, Rat> LambdaMu(const ConstructionParams& p) {
  if (p.mode != Mode::kFinite) {
    throw Error(ErrorCode::kBadInput, "lambda and mu are defined for the finite mode only");
  }
  Rat l1 = 1 / (p.w - 1 + p.tau0);
  Rat l2 = (p.sigma - p.tau0) / p.sigma;
  Rat m1 = p.sigma / ((p.w - 1) * p.tau0);
  Rat m2 = (p.w - 1 + p.tau0) / p.tau0;
  return {l1 > l2 ? l1 : l2, m1 > m2 ? m1 : m2};
}

EmpiricalExponents RunEmpirical(const ConstructionRun& run, int level) {
  const int depth = static_cast<int>(run.levels.size());
  if (level == 0) level = depth;
  if (level < 1 || level > depth) {
    throw Error(ErrorCode::kIndexOutOfRun, "no level " + std::to_string(level) + " in this run");
  }
  const ConstructionLevel& lv = run.levels[level - 1];
  const double inf = std::numeric_limits<double>::infinity();
  EmpiricalExponents e;
  e.level = level;
  e.v = e.v_prime = {-inf, -inf};
  e.w = e.w_prime = {inf, inf};
  for (std::size_t k = 0; k + 1 < lv.lines.size(); ++k) {
    const Vec3& X = lv.lines[k].coords.vec();
    ErrorInterval L = SeminormL(X, run.target);
    e.v = Max(e.v, NegLogRatio(L.lo, L.hi, X.Norm()));
    e.w = Min(e.w, NegLogRatio(L.lo, L.hi, lv.lines[k + 1].coords.Height()));
  }
  for (std::size_t k = 0; k + 1 < lv.points.size(); ++k) {
    const Vec3& X = lv.points[k].coords.vec();
    ErrorInterval M = SeminormM(X, run.target);
    e.v_prime = Max(e.v_prime, NegLogRatio(M.lo, M.hi, X.Norm()));
    e.w_prime = Min(e.w_prime, NegLogRatio(M.lo, M.hi, lv.points[k + 1].coords.Height()));
  }
  return e;
}

bool VerifierReport::AllPass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

VerifierReport VerifyQuadruple(const ExponentQuadruple& q) {
  VerifierReport report;
  report.checks = CheckQuadruple(q);
  return report;
}

VerifierReport CertifyRun(const ConstructionRun& run, const CertifyOptions& options) {
  VerifierReport report;
  auto& checks = report.checks;

  // (i) certificates recomputed from the stored triples.
  try {
    std::vector<Certificate> certs = ComputeCertificates(run);
    long failures = 0;
    for (const Certificate& c : certs) {
      if (!c.hard || c.holds) continue;
      ++failures;
      XR residual = c.relation == "<=" ? XR(Rat(c.rhs - c.lhs)) : XR(Rat(-Abs(Rat(c.lhs - c.rhs))));
      checks.push_back({"certificate " + c.name + " " + c.index, residual, c.relation, false});
    }
    checks.push_back(EqualZero("exact certificates", XR(Rat(-failures))));
    long mismatched = 0;
    if (certs.size() != run.certificates.size()) {
      mismatched = static_cast<long>(std::max(certs.size(), run.certificates.size()));
    } else {
      for (std::size_t i = 0; i < certs.size(); ++i) {
        const Certificate& a = certs[i];
        const Certificate& b = run.certificates[i];
        if (a.name != b.name || a.index != b.index || a.lhs != b.lhs || a.rhs != b.rhs ||
            a.holds != b.holds) {
          ++mismatched;
        }
      }
    }
    checks.push_back(EqualZero("stored certificates reproduced", XR(Rat(-mismatched))));

    const int depth = static_cast<int>(run.levels.size());
    auto image = AffineImage(run.Point(depth + 1, 0));
    Rat offset = Abs(Rat(image[0] - run.target.alpha)) + Abs(Rat(image[1] - run.target.beta));
    checks.push_back(EqualZero("target centered at deepest point", XR(Rat(-offset))));
    checks.push_back(AtLeastZero("target radius covers tail",
                                 XR(Rat(run.target.radius - TailRadius(run, depth + 1, 0)))));
  } catch (const Error& e) {
    checks.push_back(EqualZero(std::string("certificates recomputable: ") + e.what(),
                               XR::NegInf()));
    return report;
  }

  // (ii), (iii) measured exponents against the prediction.
  try {
    report.predicted = PredictQuadruple(run.params);
  } catch (const Error& e) {
    report.notes.push_back(std::string("no prediction: ") + e.what());
  }
  if (run.params.mode == Mode::kFinite && report.predicted) {
    auto [lambda, mu] = LambdaMu(run.params);
    report.lambda = lambda;
    report.mu = mu;
  }
  EmpiricalExponents emp = RunEmpirical(run, options.level);
  report.empirical = emp;
  if (report.predicted) {
    const ExponentQuadruple& p = *report.predicted;
    const std::pair<const char*, std::pair<const XR*, const Enclosure*>> parts[] = {
        {"v", {&p.v, &emp.v}},
        {"v'", {&p.v_prime, &emp.v_prime}},
        {"w", {&p.w, &emp.w}},
        {"w'", {&p.w_prime, &emp.w_prime}}};
    for (const auto& [name, pe] : parts) {
      const XR& predicted = *pe.first;
      const Enclosure& measured = *pe.second;
      if (!predicted.finite()) {
        report.notes.push_back(std::string("predicted ") + name + " is inf; measured " +
                               std::to_string(measured.mid()));
        continue;
      }
      XR allowed(Rat(options.tolerance * Abs(predicted.value())));
      XR dev = Deviation(measured, predicted.value());
      XR residual = dev.IsPosInf() ? XR::NegInf() : allowed - dev;
      checks.push_back(AtLeastZero(std::string("measured ") + name + " within tolerance", residual));
    }
  }

  // (iv) no foreign minimal point once the family starts.
  for (Which which : {Which::kL, Which::kM}) {
    std::set<std::string> family;
    for (const ConstructionLevel& lv : run.levels) {
      if (which == Which::kL) {
        for (const auto& ln : lv.lines) family.insert(ln.coords.ToString());
      } else {
        for (const auto& pt : lv.points) family.insert(pt.coords.ToString());
      }
    }
    const std::string name = std::string("no foreign minimal point (") + WhichName(which) + ")";
    try {
      ExponentTrace trace =
          BruteForceMinima(run.target, options.foreign_hmax, which, options.workers);
      bool started = false;
      long foreign = 0;
      for (const ApproxRecord& r : trace.records) {
        bool member = family.count(r.triple.ToString()) > 0;
        started = started || member;
        if (started && r.certified && !member) ++foreign;
      }
      if (!started) {
        report.notes.push_back(name + ": no family triple up to H = " +
                               options.foreign_hmax.get_str());
      }
      checks.push_back(EqualZero(name, XR(Rat(-foreign))));
    } catch (const Error& e) {
      report.notes.push_back(name + ": " + e.what());
      checks.push_back(EqualZero(name, XR::NegInf()));
    }
  }
  return report;
}

std::string ReportJson(const VerifierReport& report) {
  using Json = nlohmann::ordered_json;
  Json doc;
  doc["schema"] = "dioexp.report/1";
  doc["all_pass"] = report.AllPass();
  Json checks = Json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"residual", c.residual.ToString()},
                      {"relation", c.relation},
                      {"pass", c.pass}});
  }
  doc["checks"] = checks;
  if (report.lambda) doc["lambda"] = ToString(*report.lambda);
  if (report.mu) doc["mu"] = ToString(*report.mu);
  if (report.predicted) doc["predicted"] = report.predicted->ToString();
  if (report.empirical) {
    auto enc = [](const Enclosure& e) { return Json::array({e.lo, e.hi}); };
    doc["empirical"] = {{"level", report.empirical->level},
                        {"v", enc(report.empirical->v)},
                        {"v_prime", enc(report.empirical->v_prime)},
                        {"w", enc(report.empirical->w)},
                        {"w_prime", enc(report.empirical->w_prime)}};
  }
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

}  // namespace dioexp
