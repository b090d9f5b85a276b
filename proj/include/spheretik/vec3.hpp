#pragma once

#include <array>
#include <cmath>

#include "spheretik/error.hpp"

namespace spheretik {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double inner(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(inner(v, v)); }

/// A vector whose norm is 1 within 1e-12, checked at construction.
class UnitVec3 {
 public:
  explicit UnitVec3(const Vec3& v) : v_(v) {
    if (!v.finite() || std::abs(norm(v) - 1.0) > kUnitTol) {
      throw Error(ErrorCode::InvalidArgument, "vector is not unit length");
    }
  }

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

  static constexpr double kUnitTol = 1e-12;

 private:
  Vec3 v_;
};

/// Threshold below which a vector is considered degenerate for normalization.
constexpr double kDegenerateNorm = 1e-12;

/// v / ||v||; throws DegenerateVector for ||v|| <= 1e-12 so each caller picks
/// its own fallback. Already-unit vectors pass through unchanged.
inline UnitVec3 normalize(const Vec3& v) {
  if (!v.finite()) {
    throw Error(ErrorCode::NonFiniteValue, "cannot normalize non-finite vector");
  }
  const double n = norm(v);
  if (n <= kDegenerateNorm) {
    throw Error(ErrorCode::DegenerateVector, "cannot normalize near-zero vector");
  }
  if (std::abs(n - 1.0) <= UnitVec3::kUnitTol) {
    return UnitVec3(v);  // keep bits stable, normalize is idempotent
  }
  return UnitVec3(Vec3{v.x / n, v.y / n, v.z / n});
}

/// arccos of the clamped inner product, in [0, pi].
inline double angular_distance(const UnitVec3& a, const UnitVec3& b) {
  double c = inner(a.vec(), b.vec());
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

/// Row-major 3x3 matrix; used for rotations and reflections.
struct Mat3 {
  std::array<double, 9> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return r;
  }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Mat3 transpose() const {
    Mat3 r;
    r.m = {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
    return r;
  }

  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

}  // namespace spheretik
