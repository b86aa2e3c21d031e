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

#include "dioexp/geometry.hpp"

#include <algorithm>

namespace dioexp {

const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kLiteral: return "literal";
    case Provenance::kAlgebraic: return "algebraic";
    case Provenance::kContinuedFraction: return "continued-fraction";
    case Provenance::kConstructedRun: return "constructed-run";
  }
  return "unknown";
}

Rat TargetPoint::BoxBound() const {
  return std::max(Abs(alpha), Abs(beta)) + radius;
}

Int Vec3::Norm() const { return std::max({Abs(x), Abs(y), Abs(z)}); }

std::string Vec3::ToString() const {
  return "(" + x.get_str() + "," + y.get_str() + "," + z.get_str() + ")";
}

bool LexLess(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

Vec3 Wedge(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Int Dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

IntegerTriple IntegerTriple::Normalize(const Vec3& raw) {
  if (raw.IsZero()) throw Error(ErrorCode::kZeroTriple, "zero triple has no projective image");
  Int g;
  mpz_gcd(g.get_mpz_t(), raw.x.get_mpz_t(), raw.y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), raw.z.get_mpz_t());
  const Int& lead = raw.x != 0 ? raw.x : (raw.y != 0 ? raw.y : raw.z);
  if (lead < 0) g = -g;
  Vec3 v{raw.x / g, raw.y / g, raw.z / g};
  return IntegerTriple(std::move(v));
}

Rat ProjectiveDistance(const Vec3& a, const Vec3& b) {
  return MakeRat(Wedge(a, b).Norm(), a.Norm() * b.Norm());
}

Rat DistPoints(const ProjectivePoint& p, const ProjectivePoint& q) {
  return ProjectiveDistance(p.coords.vec(), q.coords.vec());
}

Rat DistLines(const ProjectiveLine& a, const ProjectiveLine& b) {
  return ProjectiveDistance(a.coords.vec(), b.coords.vec());
}

Rat DistPointLine(const ProjectivePoint& p, const ProjectiveLine& line) {
  return MakeRat(Abs(Dot(p.coords.vec(), line.coords.vec())), p.Height() * line.Height());
}

bool Incident(const ProjectivePoint& p, const ProjectiveLine& line) {
  return Dot(p.coords.vec(), line.coords.vec()) == 0;
}

ProjectiveLine Join(const ProjectivePoint& p, const ProjectivePoint& q) {
  Vec3 w = Wedge(p.coords.vec(), q.coords.vec());
  if (w.IsZero()) throw Error(ErrorCode::kProportionalTriples, "join of equal points");
  return LineOf(w);
}

ProjectivePoint Meet(const ProjectiveLine& a, const ProjectiveLine& b) {
  Vec3 w = Wedge(a.coords.vec(), b.coords.vec());
  if (w.IsZero()) throw Error(ErrorCode::kProportionalTriples, "meet of equal lines");
  return PointOf(w);
}

std::array<Rat, 2> AffineImage(const ProjectivePoint& p) {
  const Vec3& v = p.coords.vec();
  if (v.z == 0) throw Error(ErrorCode::kBadInput, "point at infinity has no affine image");
  return {MakeRat(v.x, v.z), MakeRat(v.y, v.z)};
}

Rat LinearFormAtCenter(const Vec3& X, const TargetPoint& t) {
  return Abs(Rat(X.x) * t.alpha + Rat(X.y) * t.beta + Rat(X.z));
}

Rat SimultaneousAtCenter(const Vec3& X, const TargetPoint& t) {
  return std::max(Abs(Rat(X.z) * t.alpha - Rat(X.x)), Abs(Rat(X.z) * t.beta - Rat(X.y)));
}

namespace {

ErrorInterval Widen(const Rat& center_value, const Rat& half_width) {
  Rat lo = center_value - half_width;
  if (lo < 0) lo = 0;
  return {lo, center_value + half_width};
}

}  // namespace

ErrorInterval SeminormL(const Vec3& X, const TargetPoint& t) {
  return Widen(LinearFormAtCenter(X, t), Rat(Abs(X.x) + Abs(X.y)) * t.radius);
}

ErrorInterval SeminormM(const Vec3& X, const TargetPoint& t) {
  return Widen(SimultaneousAtCenter(X, t), Rat(Abs(X.z)) * t.radius);
}

}  // namespace dioexp
