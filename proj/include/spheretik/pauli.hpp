#pragma once

#include <array>
#include <complex>

#include "spheretik/vec3.hpp"

namespace spheretik {

/// 2x2 complex matrix, row major.
struct ComplexMat2 {
  std::array<std::complex<double>, 4> m{};

  std::complex<double>& at(int i, int j) { return m[static_cast<std::size_t>(i * 2 + j)]; }
  const std::complex<double>& at(int i, int j) const { return m[static_cast<std::size_t>(i * 2 + j)]; }

  ComplexMat2 hermitian_transpose() const {
    ComplexMat2 r;
    r.at(0, 0) = std::conj(at(0, 0));
    r.at(0, 1) = std::conj(at(1, 0));
    r.at(1, 0) = std::conj(at(0, 1));
    r.at(1, 1) = std::conj(at(1, 1));
    return r;
  }

  ComplexMat2 operator*(const ComplexMat2& o) const {
    ComplexMat2 r;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
      }
    }
    return r;
  }

  std::complex<double> trace() const { return at(0, 0) + at(1, 1); }
};

/// 6x6 complex Hermitian matrix. Real and imaginary parts are stored as two
/// contiguous row-major arrays so batched kernels can treat a matrix as 72
/// plain doubles. Hermitian symmetry is an invariant: set() writes both
/// triangles, symmetrize() repairs arbitrary content.
class HermitianMat6 {
 public:
  HermitianMat6() = default;

  std::complex<double> at(int i, int j) const {
    const std::size_t k = idx(i, j);
    return {re_[k], im_[k]};
  }

  /// Sets entry (i,j) and its mirror (j,i). Diagonal writes keep only the
  /// real part.
  void set(int i, int j, std::complex<double> value) {
    const std::size_t k = idx(i, j);
    if (i == j) {
      re_[k] = value.real();
      im_[k] = 0.0;
      return;
    }
    re_[k] = value.real();
    im_[k] = value.imag();
    const std::size_t t = idx(j, i);
    re_[t] = value.real();
    im_[t] = -value.imag();
  }

  /// H <- (H + H^H)/2 entrywise; makes arbitrary raw content Hermitian.
  void symmetrize();

  static HermitianMat6 identity();
  static HermitianMat6 diagonal(const std::array<double, 6>& d);

  double frobenius_norm() const;
  double max_abs_diff(const HermitianMat6& o) const;
  double trace() const;

  HermitianMat6& operator+=(const HermitianMat6& o);
  HermitianMat6& operator-=(const HermitianMat6& o);
  HermitianMat6& operator*=(double s);

  double* re() { return re_.data(); }
  double* im() { return im_.data(); }
  const double* re() const { return re_.data(); }
  const double* im() const { return im_.data(); }

  static std::size_t idx(int i, int j) { return static_cast<std::size_t>(i * 6 + j); }

 private:
  std::array<double, 36> re_{};
  std::array<double, 36> im_{};
};

/// Real inner product of Hermitian matrices, Re tr(A^H B).
double frobenius_inner(const HermitianMat6& a, const HermitianMat6& b);

/// Auxiliary scalars of one edge. At exact values for unit endpoints,
/// d = x.x' and (e,f,g) = x' x x (cross product), so d^2+e^2+f^2+g^2 = 1.
struct EdgeAux {
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  double g = 0.0;
};

/// The scaled Pauli matrix of x = (a,b,c):
///   [ -ci   -b-ai ]
///   [ b-ai   ci   ]
/// Skew-Hermitian for every real x, and M^H M = ||x||^2 Id.
ComplexMat2 pauli_embed(const Vec3& x);

/// M_x^H M_x'. Its trace is twice the Euclidean inner product x.x'.
ComplexMat2 edge_gram(const Vec3& x, const Vec3& xp);

/// The auxiliary values that make the edge matrix rank 2 for unit endpoints.
EdgeAux exact_edge_params(const UnitVec3& x, const UnitVec3& xp);

/// Assembles the 6x6 Hermitian edge matrix
///   [ Id     M_x          M_x'       ]
///   [ M_x^H  Id           d Id+M_efg ]
///   [ M_x'^H (d Id+M_efg)^H  Id      ]
/// Defined for arbitrary real inputs; positive semidefinite of rank 2 exactly
/// when x, x' are unit and aux = exact_edge_params(x, x').
HermitianMat6 build_edge_matrix(const Vec3& x, const Vec3& xp, const EdgeAux& aux);

struct EdgeMatrixParts {
  Vec3 x;
  Vec3 xp;
  EdgeAux aux;
};

/// Reads the ten scalar parameters back out of a matrix with the edge-matrix
/// entry pattern. Redundant entries are cross-checked against each other and
/// against the unit diagonal to `tol`; violations raise MalformedEdgeMatrix.
EdgeMatrixParts extract_from_matrix(const HermitianMat6& h, double tol = 1e-8);

}  // namespace spheretik
