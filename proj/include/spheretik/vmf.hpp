#pragma once

#include "spheretik/rng.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik {

/// von Mises-Fisher distribution on the unit sphere, density ~ exp(kappa mu.x).
/// kappa = 0 is the uniform distribution.
struct VmfParams {
  UnitVec3 mu;
  double kappa = 0.0;

  VmfParams(const UnitVec3& mu_, double kappa_) : mu(mu_), kappa(kappa_) {
    if (!(kappa_ >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "vMF concentration must be >= 0");
    }
  }
};

/// One draw from the vMF density, via the 3-D inverse-CDF closed form (no
/// rejection, so the draw consumes exactly two uniforms).
UnitVec3 sample_vmf(const VmfParams& params, Rng& rng);

/// Deterministic orthogonal frame whose third column is mu (a Householder
/// reflection taking e3 to mu).
Mat3 frame_with_pole(const UnitVec3& mu);

/// Uniformly distributed rotation (det +1), via a normalized random quaternion.
Mat3 random_rotation(Rng& rng);

/// Uniform point on the sphere.
UnitVec3 random_unit(Rng& rng);

/// Geodesic interpolation from a to b; t in [0,1]. Near-antipodal inputs take
/// a deterministic great circle through a fixed perpendicular axis.
UnitVec3 slerp(const UnitVec3& a, const UnitVec3& b, double t);

}  // namespace spheretik
