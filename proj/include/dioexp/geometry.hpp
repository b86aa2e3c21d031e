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

#ifndef DIOEXP_GEOMETRY_HPP_
#define DIOEXP_GEOMETRY_HPP_

#include <array>
#include <string>

#include "dioexp/numeric.hpp"
#include "dioexp/target_point.hpp"

namespace dioexp {

// Raw integer 3-vector. May be zero and need not be primitive.
struct Vec3 {
  Int x, y, z;

  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(const Int& k, const Vec3& a) {
    return {k * a.x, k * a.y, k * a.z};
  }
  Vec3 operator-() const { return {-x, -y, -z}; }

  bool IsZero() const { return x == 0 && y == 0 && z == 0; }
  // Sup norm max(|x|, |y|, |z|).
  Int Norm() const;
  std::string ToString() const;
};

// Lexicographic comparison on (x, y, z).
bool LexLess(const Vec3& a, const Vec3& b);

Vec3 Wedge(const Vec3& a, const Vec3& b);
Int Dot(const Vec3& a, const Vec3& b);

// Primitive integer triple whose first nonzero coordinate is positive; the
// canonical representative of a rational point or line of P^2.
class IntegerTriple {
 public:
  // Throws Error(kZeroTriple) for the zero vector.
  static IntegerTriple Normalize(const Vec3& raw);

  const Vec3& vec() const { return v_; }
  const Int& x() const { return v_.x; }
  const Int& y() const { return v_.y; }
  const Int& z() const { return v_.z; }
  Int Height() const { return v_.Norm(); }
  std::string ToString() const { return v_.ToString(); }

  friend bool operator==(const IntegerTriple& a, const IntegerTriple& b) {
    return a.v_ == b.v_;
  }

 private:
  explicit IntegerTriple(Vec3 v) : v_(std::move(v)) {}
  Vec3 v_;
};

inline IntegerTriple Normalize(const Vec3& raw) {
  return IntegerTriple::Normalize(raw);
}

// A rational point (x : y : z) of P^2.
struct ProjectivePoint {
  IntegerTriple coords;
  Int Height() const { return coords.Height(); }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};

// The rational line r X + s Y + t Z = 0.
struct ProjectiveLine {
  IntegerTriple coords;
  Int Height() const { return coords.Height(); }
  friend bool operator==(const ProjectiveLine&, const ProjectiveLine&) = default;
};

inline ProjectivePoint PointOf(const Vec3& raw) { return {Normalize(raw)}; }
inline ProjectiveLine LineOf(const Vec3& raw) { return {Normalize(raw)}; }

// Projective distance |P ^ P'| / (|P| |P'|) on raw vectors.
Rat ProjectiveDistance(const Vec3& a, const Vec3& b);

Rat DistPoints(const ProjectivePoint& p, const ProjectivePoint& q);
Rat DistLines(const ProjectiveLine& a, const ProjectiveLine& b);
// |r x + s y + t z| / (|P| |Delta|).
Rat DistPointLine(const ProjectivePoint& p, const ProjectiveLine& line);

bool Incident(const ProjectivePoint& p, const ProjectiveLine& line);
// The line through two distinct points, the point shared by two distinct lines.
ProjectiveLine Join(const ProjectivePoint& p, const ProjectivePoint& q);
ProjectivePoint Meet(const ProjectiveLine& a, const ProjectiveLine& b);

// Affine image (a/c, b/c); requires c != 0.
std::array<Rat, 2> AffineImage(const ProjectivePoint& p);

struct ErrorInterval {
  Rat lo, hi;
  bool IsPoint() const { return lo == hi; }
  bool Contains(const Rat& v) const { return lo <= v && v <= hi; }
};

// |x alpha + y beta + z| evaluated at the target center.
Rat LinearFormAtCenter(const Vec3& X, const TargetPoint& target);
// max(|z alpha - x|, |z beta - y|) evaluated at the target center.
Rat SimultaneousAtCenter(const Vec3& X, const TargetPoint& target);

// Certified enclosures of L(X) and M(X) over every (alpha, beta) within the
// target radius of the center (sup distance).
ErrorInterval SeminormL(const Vec3& X, const TargetPoint& target);
ErrorInterval SeminormM(const Vec3& X, const TargetPoint& target);

}  // namespace dioexp

#endif  // DIOEXP_GEOMETRY_HPP_
