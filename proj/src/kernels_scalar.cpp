#include <algorithm>
#include <cmath>

#include "eig6_jacobi.hpp"
#include "spheretik/kernels.hpp"

namespace spheretik::kernels {

namespace {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void step_extrapolate_scalar(std::size_t n, const double* z, const double* g, double tau,
                             double* z_new, double* z_bar) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zn = z[i] - tau * g[i];
    z_new[i] = zn;
    z_bar[i] = 2.0 * zn - z[i];
  }
}

double dot_scalar(std::size_t n, const double* a, const double* b) {
  // Four accumulators, lane j taking indices == j mod 4; matches the SIMD
  // accumulation order so both implementations return identical bits.
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
    acc2 += a[i + 2] * b[i + 2];
    acc3 += a[i + 3] * b[i + 3];
  }
  double* accs[4] = {&acc0, &acc1, &acc2, &acc3};
  for (std::size_t j = 0; i < n; ++i, ++j) {
    *accs[j] += a[i] * b[i];
  }
  return (acc0 + acc1) + (acc2 + acc3);
}

double max_abs_scalar(std::size_t n, const double* a) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(a[i]));
  }
  return m;
}

double max_abs_diff_scalar(std::size_t n, const double* a, const double* b) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

std::size_t psd_project_batch_scalar(HermitianMat6* mats, std::size_t count) {
  std::size_t failures = 0;
  double vre[36], vim[36];
  for (std::size_t k = 0; k < count; ++k) {
    double* hre = mats[k].re();
    double* him = mats[k].im();
    if (!detail::jacobi_eig6(hre, him, vre, vim, /*want_vectors=*/true)) {
      ++failures;
    }
    double eval[6];
    for (int i = 0; i < 6; ++i) {
      eval[i] = hre[i * 6 + i];
    }
    // P = sum_k relu(lambda_k) v_k v_k^H, upper triangle then mirror.
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        double pre = 0.0, pim = 0.0;
        for (int e = 0; e < 6; ++e) {
          const double lam = eval[e] > 0.0 ? eval[e] : 0.0;
          if (lam == 0.0) continue;
          const double ar = vre[i * 6 + e], ai = vim[i * 6 + e];
          const double br = vre[j * 6 + e], bi = vim[j * 6 + e];
          pre += lam * (ar * br + ai * bi);
          pim += lam * (ai * br - ar * bi);
        }
        hre[i * 6 + j] = pre;
        him[i * 6 + j] = (i == j) ? 0.0 : pim;
        hre[j * 6 + i] = pre;
        him[j * 6 + i] = (i == j) ? 0.0 : -pim;
      }
    }
  }
  return failures;
}

std::size_t min_eig_batch_scalar(const HermitianMat6* mats, std::size_t count, double* out) {
  std::size_t failures = 0;
  double hre[36], him[36];
  for (std::size_t k = 0; k < count; ++k) {
    std::copy(mats[k].re(), mats[k].re() + 36, hre);
    std::copy(mats[k].im(), mats[k].im() + 36, him);
    if (!detail::jacobi_eig6(hre, him, nullptr, nullptr, /*want_vectors=*/false)) {
      ++failures;
    }
    double m = hre[0];
    for (int i = 1; i < 6; ++i) {
      m = std::min(m, hre[i * 6 + i]);
    }
    out[k] = m;
  }
  return failures;
}

}  // namespace

const Ops& scalar() {
  static const Ops ops{
      "scalar",
      axpy_scalar,
      step_extrapolate_scalar,
      dot_scalar,
      max_abs_scalar,
      max_abs_diff_scalar,
      psd_project_batch_scalar,
      min_eig_batch_scalar,
  };
  return ops;
}

}  // namespace spheretik::kernels
