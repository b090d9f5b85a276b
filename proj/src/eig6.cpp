#include "spheretik/eig6.hpp"

#include <algorithm>
#include <cmath>

#include "eig6_jacobi.hpp"
#include "spheretik/error.hpp"

namespace spheretik {

namespace {

void run_jacobi(const HermitianMat6& h, double* hre, double* him, double* vre, double* vim,
                bool want_vectors) {
  std::copy(h.re(), h.re() + 36, hre);
  std::copy(h.im(), h.im() + 36, him);
  if (!detail::jacobi_eig6(hre, him, vre, vim, want_vectors)) {
    throw Error(ErrorCode::NoConvergence, "jacobi eigensolve did not converge in 100 sweeps");
  }
}

}  // namespace

EigenDecomposition6 eig_hermitian(const HermitianMat6& h) {
  double hre[36], him[36], vre[36], vim[36];
  run_jacobi(h, hre, him, vre, vim, /*want_vectors=*/true);

  std::array<int, 6> order{0, 1, 2, 3, 4, 5};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return hre[a * 6 + a] < hre[b * 6 + b]; });

  EigenDecomposition6 out;
  for (int k = 0; k < 6; ++k) {
    const int src = order[k];
    out.eigenvalues[k] = hre[src * 6 + src];
    std::array<std::complex<double>, 6> col;
    for (int i = 0; i < 6; ++i) {
      col[i] = {vre[i * 6 + src], vim[i * 6 + src]};
    }
    // Rotate the free phase so the first non-negligible component is real
    // positive; a unit vector always has a component of magnitude >= 1/sqrt(6).
    for (int i = 0; i < 6; ++i) {
      const double mag = std::abs(col[i]);
      if (mag > 1e-8) {
        const std::complex<double> phase = std::conj(col[i]) / mag;
        for (auto& c : col) c *= phase;
        break;
      }
    }
    for (int i = 0; i < 6; ++i) {
      out.vectors[i * 6 + k] = col[i];
    }
  }
  return out;
}

HermitianMat6 project_psd(const HermitianMat6& h) {
  double hre[36], him[36], vre[36], vim[36];
  run_jacobi(h, hre, him, vre, vim, /*want_vectors=*/true);

  HermitianMat6 p;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      double pre = 0.0, pim = 0.0;
      for (int e = 0; e < 6; ++e) {
        const double lam = hre[e * 6 + e];
        if (lam <= 0.0) continue;
        const std::complex<double> a{vre[i * 6 + e], vim[i * 6 + e]};
        const std::complex<double> b{vre[j * 6 + e], vim[j * 6 + e]};
        const std::complex<double> term = lam * a * std::conj(b);
        pre += term.real();
        pim += term.imag();
      }
      p.set(i, j, {pre, i == j ? 0.0 : pim});
    }
  }
  return p;
}

double min_eigenvalue(const HermitianMat6& h) {
  double hre[36], him[36];
  run_jacobi(h, hre, him, nullptr, nullptr, /*want_vectors=*/false);
  double m = hre[0];
  for (int i = 1; i < 6; ++i) {
    m = std::min(m, hre[i * 6 + i]);
  }
  return m;
}

}  // namespace spheretik
