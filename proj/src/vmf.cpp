#include "spheretik/vmf.hpp"

#include <cmath>

namespace spheretik {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Mat3 frame_with_pole(const UnitVec3& mu) {
  const Vec3 m = mu.vec();
  // Reflection through the bisector plane of e3 and mu swaps the two; it is
  // orthogonal, so its columns form the frame we need. Degenerate only at
  // mu = e3 (identity) and handled explicitly at mu = -e3.
  if (m.z > 1.0 - 1e-14) {
    return Mat3::identity();
  }
  if (m.z < -1.0 + 1e-14) {
    Mat3 r;
    r.m = {1, 0, 0, 0, 1, 0, 0, 0, -1};
    return r;
  }
  const Vec3 v{m.x, m.y, m.z - 1.0};  // mu - e3
  const double s = 2.0 / inner(v, v);
  Mat3 h;
  h.m = {1.0 - s * v.x * v.x, -s * v.x * v.y,       -s * v.x * v.z,
         -s * v.y * v.x,      1.0 - s * v.y * v.y,  -s * v.y * v.z,
         -s * v.z * v.x,      -s * v.z * v.y,       1.0 - s * v.z * v.z};
  return h;
}

UnitVec3 sample_vmf(const VmfParams& params, Rng& rng) {
  const double kappa = params.kappa;
  const double u = rng.uniform();
  const double phi = kTwoPi * rng.uniform();

  double cos_theta;
  if (kappa < 1e-12) {
    cos_theta = 2.0 * u - 1.0;  // uniform on the sphere
  } else {
    // Inverse CDF of the colatitude: cos(t) = 1 + log(u + (1-u) e^{-2k}) / k,
    // written with expm1 so small kappa stays accurate.
    const double mix = std::exp(-2.0 * kappa) - u * std::expm1(-2.0 * kappa);
    cos_theta = 1.0 + std::log(mix) / kappa;
  }
  if (cos_theta > 1.0) cos_theta = 1.0;
  if (cos_theta < -1.0) cos_theta = -1.0;
  const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);

  const Vec3 local{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
  const Vec3 world = frame_with_pole(params.mu).apply(local);
  return normalize(world);
}

UnitVec3 random_unit(Rng& rng) {
  // Retry loop is deterministic; a near-zero gaussian triple is astronomically
  // rare but must not produce a degenerate normalize.
  for (;;) {
    const Vec3 g{rng.gaussian(), rng.gaussian(), rng.gaussian()};
    if (norm(g) > 1e-6) {
      return normalize(g);
    }
  }
}

Mat3 random_rotation(Rng& rng) {
  double q0, q1, q2, q3, n2;
  do {
    q0 = rng.gaussian();
    q1 = rng.gaussian();
    q2 = rng.gaussian();
    q3 = rng.gaussian();
    n2 = q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3;
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  const double w = q0 * inv, x = q1 * inv, y = q2 * inv, z = q3 * inv;
  Mat3 r;
  r.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
         2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
  return r;
}

UnitVec3 slerp(const UnitVec3& a, const UnitVec3& b, double t) {
  double c = inner(a.vec(), b.vec());
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  const double omega = std::acos(c);
  if (omega < 1e-9) {
    return normalize(a.vec() * (1.0 - t) + b.vec() * t);
  }
  if (omega > kTwoPi / 2.0 - 1e-9) {
    // Antipodal endpoints: route through a fixed perpendicular midpoint.
    Vec3 perp = cross(a.vec(), Vec3{1.0, 0.0, 0.0});
    if (norm(perp) < 1e-6) {
      perp = cross(a.vec(), Vec3{0.0, 1.0, 0.0});
    }
    const UnitVec3 mid = normalize(perp);
    return t < 0.5 ? slerp(a, mid, 2.0 * t) : slerp(mid, b, 2.0 * t - 1.0);
  }
  const double s = std::sin(omega);
  const Vec3 out = a.vec() * (std::sin((1.0 - t) * omega) / s) + b.vec() * (std::sin(t * omega) / s);
  return normalize(out);
}

}  // namespace spheretik
