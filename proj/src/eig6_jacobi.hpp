#pragma once

// Scalar cyclic Jacobi eigensolver for 6x6 complex Hermitian matrices.
// Shared by the scalar kernels and the public hermitian-linalg API; the AVX2
// batch kernel mirrors the same rotation schedule lane-parallel.

#include <cmath>
#include <cstddef>

namespace spheretik::detail {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffTol = 1e-13;  // times ||H||_F

// Diagonalizes H (re/im, row-major 6x6, Hermitian). On return the diagonal of
// `hre` holds the eigenvalues (unsorted) and, if want_vectors, columns of
// (vre, vim) hold the eigenvectors. Returns false if the sweep cap was hit
// before all off-diagonal magnitudes fell below kJacobiOffTol * ||H||_F.
inline bool jacobi_eig6(double* hre, double* him, double* vre, double* vim, bool want_vectors) {
  constexpr int n = 6;
  const auto at = [](int i, int j) { return i * n + j; };

  if (want_vectors) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        vre[at(i, j)] = (i == j) ? 1.0 : 0.0;
        vim[at(i, j)] = 0.0;
      }
    }
  }

  double fro2 = 0.0;
  for (int k = 0; k < n * n; ++k) {
    fro2 += hre[k] * hre[k] + him[k] * him[k];
  }
  const double thresh2 = kJacobiOffTol * kJacobiOffTol * fro2;

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double max_off2 = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double r = hre[at(p, q)], m = him[at(p, q)];
        const double a2 = r * r + m * m;
        if (a2 > max_off2) max_off2 = a2;
      }
    }
    if (max_off2 <= thresh2) {
      return true;
    }

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq_re = hre[at(p, q)], apq_im = him[at(p, q)];
        const double mag2 = apq_re * apq_re + apq_im * apq_im;
        if (mag2 < 1e-300) {
          continue;
        }
        const double mag = std::sqrt(mag2);
        // Phase factor e^{-i phi} with phi = arg(a_pq).
        const double pr = apq_re / mag;
        const double pi = apq_im / mag;
        // Classic Jacobi angle for the phase-rotated real 2x2 block.
        const double theta = (hre[at(q, q)] - hre[at(p, p)]) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U restricted to the (p,q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const double sr = s * pr, si = -s * pi;   // s e^{-i phi}
        const double cr = c * pr, ci = -c * pi;   // c e^{-i phi}

        const double new_pp = hre[at(p, p)] - t * mag;
        const double new_qq = hre[at(q, q)] + t * mag;
        hre[at(p, p)] = new_pp;
        hre[at(q, q)] = new_qq;
        hre[at(p, q)] = 0.0;
        him[at(p, q)] = 0.0;
        hre[at(q, p)] = 0.0;
        him[at(q, p)] = 0.0;

        for (int j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          const double jp_re = hre[at(j, p)], jp_im = him[at(j, p)];
          const double jq_re = hre[at(j, q)], jq_im = him[at(j, q)];
          const double np_re = c * jp_re - (sr * jq_re - si * jq_im);
          const double np_im = c * jp_im - (sr * jq_im + si * jq_re);
          const double nq_re = s * jp_re + (cr * jq_re - ci * jq_im);
          const double nq_im = s * jp_im + (cr * jq_im + ci * jq_re);
          hre[at(j, p)] = np_re;
          him[at(j, p)] = np_im;
          hre[at(j, q)] = nq_re;
          him[at(j, q)] = nq_im;
          hre[at(p, j)] = np_re;
          him[at(p, j)] = -np_im;
          hre[at(q, j)] = nq_re;
          him[at(q, j)] = -nq_im;
        }

        if (want_vectors) {
          for (int j = 0; j < n; ++j) {
            const double jp_re = vre[at(j, p)], jp_im = vim[at(j, p)];
            const double jq_re = vre[at(j, q)], jq_im = vim[at(j, q)];
            vre[at(j, p)] = c * jp_re - (sr * jq_re - si * jq_im);
            vim[at(j, p)] = c * jp_im - (sr * jq_im + si * jq_re);
            vre[at(j, q)] = s * jp_re + (cr * jq_re - ci * jq_im);
            vim[at(j, q)] = s * jp_im + (cr * jq_im + ci * jq_re);
          }
        }
      }
    }
  }

  // One last convergence check after the final sweep.
  double max_off2 = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double r = hre[at(p, q)], m = him[at(p, q)];
      const double a2 = r * r + m * m;
      if (a2 > max_off2) max_off2 = a2;
    }
  }
  return max_off2 <= thresh2;
}

}  // namespace spheretik::detail
