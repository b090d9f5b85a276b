#pragma once

#include <array>
#include <complex>

#include "spheretik/pauli.hpp"

namespace spheretik {

/// Full eigendecomposition of a 6x6 complex Hermitian matrix,
/// H = sum_k eigenvalues[k] * v_k v_k^H.
struct EigenDecomposition6 {
  std::array<double, 6> eigenvalues;  // ascending
  // Row-major; column k holds the unit eigenvector v_k. Each column is
  // phase-normalized so its first component of magnitude > 1e-8 is real
  // and positive, making the decomposition deterministic.
  std::array<std::complex<double>, 36> vectors;

  std::complex<double> vector(int row, int k) const { return vectors[row * 6 + k]; }
};

/// Cyclic Jacobi eigensolve. Throws Error(NoConvergence) if the off-diagonal
/// mass has not dropped below 1e-13 * ||H||_F after 100 sweeps.
EigenDecomposition6 eig_hermitian(const HermitianMat6& h);

/// Frobenius-nearest positive semidefinite matrix (negative eigenvalues
/// clipped to zero).
HermitianMat6 project_psd(const HermitianMat6& h);

double min_eigenvalue(const HermitianMat6& h);

}  // namespace spheretik
