#pragma once

#include <cstddef>

#include "spheretik/pauli.hpp"

namespace spheretik::kernels {

enum class Mode { Auto, Scalar, Avx2 };

/// One implementation of the arithmetic inner loops. `scalar()` is the
/// reference; SIMD variants must agree with it within the tolerances asserted
/// by the equivalence tests (elementwise ops bit-exactly, reductions and
/// eigensolves to ~1e-12).
struct Ops {
  const char* name;

  // y[i] += a * x[i]
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // z_new[i] = z[i] - tau*g[i]; z_bar[i] = 2*z_new[i] - z[i]
  void (*step_extrapolate)(std::size_t n, const double* z, const double* g, double tau,
                           double* z_new, double* z_bar);
  // Blocked-by-4 accumulation in both implementations, so results match.
  double (*dot)(std::size_t n, const double* a, const double* b);
  double (*max_abs)(std::size_t n, const double* a);
  double (*max_abs_diff)(std::size_t n, const double* a, const double* b);

  // In-place projection of each matrix onto the PSD cone (Frobenius-nearest).
  // Returns the number of matrices whose eigensolve hit the sweep cap (0 on
  // success); results for such matrices are best-effort.
  std::size_t (*psd_project_batch)(HermitianMat6* mats, std::size_t count);
  // Smallest eigenvalue of each matrix.
  std::size_t (*min_eig_batch)(const HermitianMat6* mats, std::size_t count, double* out);
};

const Ops& scalar();
bool avx2_available();

/// Active implementation under the current mode (Auto picks the widest
/// supported one). Thread-safe to read; set_mode is for startup/tests.
const Ops& active();
void set_mode(Mode mode);  // throws InvalidArgument if unsupported
Mode mode();

}  // namespace spheretik::kernels
