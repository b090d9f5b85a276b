// AVX2 variants of the arithmetic kernels. The batched eigensolve runs four
// matrices lane-parallel through the same cyclic Jacobi schedule as the
// scalar reference; per-lane rotation parameters are computed in SIMD and
// converged lanes are frozen with blends. Compiled with -mavx2 only; FP
// contraction stays off project-wide so lanes match the scalar path.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "eig6_jacobi.hpp"
#include "spheretik/kernels.hpp"

namespace spheretik::kernels {

namespace {

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void step_extrapolate_avx2(std::size_t n, const double* z, const double* g, double tau,
                           double* z_new, double* z_bar) {
  const __m256d vt = _mm256_set1_pd(tau);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d vg = _mm256_loadu_pd(g + i);
    const __m256d zn = _mm256_sub_pd(vz, _mm256_mul_pd(vt, vg));
    _mm256_storeu_pd(z_new + i, zn);
    _mm256_storeu_pd(z_bar + i, _mm256_sub_pd(_mm256_mul_pd(two, zn), vz));
  }
  for (; i < n; ++i) {
    const double zn = z[i] - tau * g[i];
    z_new[i] = zn;
    z_bar[i] = 2.0 * zn - z[i];
  }
}

double dot_avx2(std::size_t n, const double* a, const double* b) {
  __m256d vacc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double acc[4];
  _mm256_store_pd(acc, vacc);
  for (std::size_t j = 0; i < n; ++i, ++j) {
    acc[j] += a[i] * b[i];
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double max_abs_avx2(std::size_t n, const double* a) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d vmax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    m = std::max(m, std::abs(a[i]));
  }
  return m;
}

double max_abs_diff_avx2(std::size_t n, const double* a, const double* b) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d vmax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

// ---- batched 6x6 Hermitian Jacobi, four matrices per batch -----------------

struct Batch4 {
  alignas(32) double hre[36][4];
  alignas(32) double him[36][4];
  alignas(32) double vre[36][4];
  alignas(32) double vim[36][4];
};

inline __m256d load_lane(const double (*arr)[4], int k) { return _mm256_load_pd(arr[k]); }
inline void store_lane(double (*arr)[4], int k, __m256d v) { _mm256_store_pd(arr[k], v); }

// Runs the Jacobi schedule on all four lanes; `converged` gets a per-lane
// flag. Lanes beyond `live` were zero-filled and converge immediately.
void jacobi_lanes(Batch4& b, bool want_vectors, bool converged[4]) {
  constexpr int n = 6;
  const auto at = [](int i, int j) { return i * n + j; };

  if (want_vectors) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = (i == j) ? 1.0 : 0.0;
        for (int lane = 0; lane < 4; ++lane) {
          b.vre[at(i, j)][lane] = v;
          b.vim[at(i, j)][lane] = 0.0;
        }
      }
    }
  }

  __m256d fro2 = _mm256_setzero_pd();
  for (int k = 0; k < n * n; ++k) {
    const __m256d r = load_lane(b.hre, k);
    const __m256d m = load_lane(b.him, k);
    fro2 = _mm256_add_pd(fro2, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  const __m256d tol2 = _mm256_set1_pd(detail::kJacobiOffTol * detail::kJacobiOffTol);
  const __m256d thresh2 = _mm256_mul_pd(tol2, fro2);

  const auto max_off2 = [&]() {
    __m256d mo = _mm256_setzero_pd();
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const __m256d r = load_lane(b.hre, at(p, q));
        const __m256d m = load_lane(b.him, at(p, q));
        mo = _mm256_max_pd(mo, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
      }
    }
    return mo;
  };

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d tiny = _mm256_set1_pd(1e-300);

  __m256d frozen = _mm256_setzero_pd();  // all-ones lanes are done

  int sweep = 0;
  for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    const __m256d conv = _mm256_cmp_pd(max_off2(), thresh2, _CMP_LE_OQ);
    frozen = _mm256_or_pd(frozen, conv);
    if (_mm256_movemask_pd(frozen) == 0xF) {
      break;
    }

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const __m256d apq_re = load_lane(b.hre, at(p, q));
        const __m256d apq_im = load_lane(b.him, at(p, q));
        const __m256d mag2 =
            _mm256_add_pd(_mm256_mul_pd(apq_re, apq_re), _mm256_mul_pd(apq_im, apq_im));
        // Lanes that rotate: unfrozen and pivot not (near-)zero.
        const __m256d apply =
            _mm256_andnot_pd(frozen, _mm256_cmp_pd(mag2, tiny, _CMP_GE_OQ));
        if (_mm256_movemask_pd(apply) == 0) {
          continue;
        }

        const __m256d mag = _mm256_sqrt_pd(mag2);
        const __m256d pr = _mm256_div_pd(apq_re, mag);
        const __m256d pi = _mm256_div_pd(apq_im, mag);
        const __m256d app = load_lane(b.hre, at(p, p));
        const __m256d aqq = load_lane(b.hre, at(q, q));
        const __m256d theta = _mm256_div_pd(_mm256_sub_pd(aqq, app), _mm256_mul_pd(two, mag));
        const __m256d sign =
            _mm256_blendv_pd(_mm256_set1_pd(-1.0), one,
                             _mm256_cmp_pd(theta, _mm256_setzero_pd(), _CMP_GE_OQ));
        const __m256d abs_theta = _mm256_andnot_pd(_mm256_set1_pd(-0.0), theta);
        const __m256d t = _mm256_div_pd(
            sign, _mm256_add_pd(abs_theta,
                                _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(theta, theta), one))));
        const __m256d c =
            _mm256_div_pd(one, _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(t, t), one)));
        const __m256d s = _mm256_mul_pd(t, c);

        const __m256d neg = _mm256_set1_pd(-0.0);
        const __m256d sr = _mm256_mul_pd(s, pr);
        const __m256d si = _mm256_xor_pd(_mm256_mul_pd(s, pi), neg);
        const __m256d cr = _mm256_mul_pd(c, pr);
        const __m256d ci = _mm256_xor_pd(_mm256_mul_pd(c, pi), neg);

        const __m256d tmag = _mm256_mul_pd(t, mag);
        store_lane(b.hre, at(p, p), _mm256_blendv_pd(app, _mm256_sub_pd(app, tmag), apply));
        store_lane(b.hre, at(q, q), _mm256_blendv_pd(aqq, _mm256_add_pd(aqq, tmag), apply));
        store_lane(b.hre, at(p, q), _mm256_blendv_pd(apq_re, _mm256_setzero_pd(), apply));
        store_lane(b.him, at(p, q), _mm256_blendv_pd(apq_im, _mm256_setzero_pd(), apply));
        store_lane(b.hre, at(q, p), _mm256_blendv_pd(load_lane(b.hre, at(q, p)), _mm256_setzero_pd(), apply));
        store_lane(b.him, at(q, p), _mm256_blendv_pd(load_lane(b.him, at(q, p)), _mm256_setzero_pd(), apply));

        const auto rotate_pair = [&](double (*are)[4], double (*aim)[4], int jp, int jq) {
          const __m256d jp_re = load_lane(are, jp);
          const __m256d jp_im = load_lane(aim, jp);
          const __m256d jq_re = load_lane(are, jq);
          const __m256d jq_im = load_lane(aim, jq);
          const __m256d np_re = _mm256_sub_pd(
              _mm256_mul_pd(c, jp_re),
              _mm256_sub_pd(_mm256_mul_pd(sr, jq_re), _mm256_mul_pd(si, jq_im)));
          const __m256d np_im = _mm256_sub_pd(
              _mm256_mul_pd(c, jp_im),
              _mm256_add_pd(_mm256_mul_pd(sr, jq_im), _mm256_mul_pd(si, jq_re)));
          const __m256d nq_re = _mm256_add_pd(
              _mm256_mul_pd(s, jp_re),
              _mm256_sub_pd(_mm256_mul_pd(cr, jq_re), _mm256_mul_pd(ci, jq_im)));
          const __m256d nq_im = _mm256_add_pd(
              _mm256_mul_pd(s, jp_im),
              _mm256_add_pd(_mm256_mul_pd(cr, jq_im), _mm256_mul_pd(ci, jq_re)));
          store_lane(are, jp, _mm256_blendv_pd(jp_re, np_re, apply));
          store_lane(aim, jp, _mm256_blendv_pd(jp_im, np_im, apply));
          store_lane(are, jq, _mm256_blendv_pd(jq_re, nq_re, apply));
          store_lane(aim, jq, _mm256_blendv_pd(jq_im, nq_im, apply));
        };

        for (int j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          rotate_pair(b.hre, b.him, at(j, p), at(j, q));
          // Mirror the Hermitian conjugates on the row side.
          const __m256d re_jp = load_lane(b.hre, at(j, p));
          const __m256d im_jp = load_lane(b.him, at(j, p));
          const __m256d re_jq = load_lane(b.hre, at(j, q));
          const __m256d im_jq = load_lane(b.him, at(j, q));
          store_lane(b.hre, at(p, j), _mm256_blendv_pd(load_lane(b.hre, at(p, j)), re_jp, apply));
          store_lane(b.him, at(p, j),
                     _mm256_blendv_pd(load_lane(b.him, at(p, j)), _mm256_xor_pd(im_jp, neg), apply));
          store_lane(b.hre, at(q, j), _mm256_blendv_pd(load_lane(b.hre, at(q, j)), re_jq, apply));
          store_lane(b.him, at(q, j),
                     _mm256_blendv_pd(load_lane(b.him, at(q, j)), _mm256_xor_pd(im_jq, neg), apply));
        }

        if (want_vectors) {
          for (int j = 0; j < n; ++j) {
            rotate_pair(b.vre, b.vim, at(j, p), at(j, q));
          }
        }
      }
    }
  }

  const __m256d conv = _mm256_or_pd(frozen, _mm256_cmp_pd(max_off2(), thresh2, _CMP_LE_OQ));
  const int mask = _mm256_movemask_pd(conv);
  for (int lane = 0; lane < 4; ++lane) {
    converged[lane] = (mask >> lane) & 1;
  }
}

void gather(const HermitianMat6* mats, std::size_t count, Batch4& b) {
  for (int k = 0; k < 36; ++k) {
    for (std::size_t lane = 0; lane < 4; ++lane) {
      b.hre[k][lane] = lane < count ? mats[lane].re()[k] : 0.0;
      b.him[k][lane] = lane < count ? mats[lane].im()[k] : 0.0;
    }
  }
}

std::size_t psd_project_batch_avx2(HermitianMat6* mats, std::size_t count) {
  std::size_t failures = 0;
  Batch4 b;
  for (std::size_t base = 0; base < count; base += 4) {
    const std::size_t cnt = std::min<std::size_t>(4, count - base);
    gather(mats + base, cnt, b);
    bool conv[4];
    jacobi_lanes(b, /*want_vectors=*/true, conv);
    for (std::size_t lane = 0; lane < cnt; ++lane) {
      if (!conv[lane]) ++failures;
    }

    // Reconstruct sum over positive eigenvalues, lane-parallel.
    alignas(32) double eval[6][4];
    for (int i = 0; i < 6; ++i) {
      const __m256d d = load_lane(b.hre, i * 6 + i);
      _mm256_store_pd(eval[i], _mm256_max_pd(d, _mm256_setzero_pd()));
    }
    alignas(32) double pre_l[4], pim_l[4];
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        __m256d pre = _mm256_setzero_pd();
        __m256d pim = _mm256_setzero_pd();
        for (int e = 0; e < 6; ++e) {
          const __m256d lam = _mm256_load_pd(eval[e]);
          const __m256d ar = load_lane(b.vre, i * 6 + e);
          const __m256d ai = load_lane(b.vim, i * 6 + e);
          const __m256d br = load_lane(b.vre, j * 6 + e);
          const __m256d bi = load_lane(b.vim, j * 6 + e);
          pre = _mm256_add_pd(
              pre, _mm256_mul_pd(lam, _mm256_add_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi))));
          pim = _mm256_add_pd(
              pim, _mm256_mul_pd(lam, _mm256_sub_pd(_mm256_mul_pd(ai, br), _mm256_mul_pd(ar, bi))));
        }
        _mm256_store_pd(pre_l, pre);
        _mm256_store_pd(pim_l, pim);
        for (std::size_t lane = 0; lane < cnt; ++lane) {
          double* hre = mats[base + lane].re();
          double* him = mats[base + lane].im();
          hre[i * 6 + j] = pre_l[lane];
          him[i * 6 + j] = (i == j) ? 0.0 : pim_l[lane];
          hre[j * 6 + i] = pre_l[lane];
          him[j * 6 + i] = (i == j) ? 0.0 : -pim_l[lane];
        }
      }
    }
  }
  return failures;
}

std::size_t min_eig_batch_avx2(const HermitianMat6* mats, std::size_t count, double* out) {
  std::size_t failures = 0;
  Batch4 b;
  for (std::size_t base = 0; base < count; base += 4) {
    const std::size_t cnt = std::min<std::size_t>(4, count - base);
    gather(mats + base, cnt, b);
    bool conv[4];
    jacobi_lanes(b, /*want_vectors=*/false, conv);
    for (std::size_t lane = 0; lane < cnt; ++lane) {
      if (!conv[lane]) ++failures;
    }
    __m256d m = load_lane(b.hre, 0);
    for (int i = 1; i < 6; ++i) {
      m = _mm256_min_pd(m, load_lane(b.hre, i * 6 + i));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    for (std::size_t lane = 0; lane < cnt; ++lane) {
      out[base + lane] = lanes[lane];
    }
  }
  return failures;
}

}  // namespace

const Ops& avx2() {
  static const Ops ops{
      "avx2",
      axpy_avx2,
      step_extrapolate_avx2,
      dot_avx2,
      max_abs_avx2,
      max_abs_diff_avx2,
      psd_project_batch_avx2,
      min_eig_batch_avx2,
  };
  return ops;
}

}  // namespace spheretik::kernels
