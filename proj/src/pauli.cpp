#include "spheretik/pauli.hpp"

#include <algorithm>
#include <cmath>

#include "spheretik/error.hpp"

namespace spheretik {

void HermitianMat6::symmetrize() {
  for (int i = 0; i < 6; ++i) {
    im_[idx(i, i)] = 0.0;
    for (int j = i + 1; j < 6; ++j) {
      const std::size_t a = idx(i, j);
      const std::size_t b = idx(j, i);
      const double r = 0.5 * (re_[a] + re_[b]);
      const double m = 0.5 * (im_[a] - im_[b]);
      re_[a] = r;
      re_[b] = r;
      im_[a] = m;
      im_[b] = -m;
    }
  }
}

HermitianMat6 HermitianMat6::identity() {
  HermitianMat6 h;
  for (int i = 0; i < 6; ++i) {
    h.re_[idx(i, i)] = 1.0;
  }
  return h;
}

HermitianMat6 HermitianMat6::diagonal(const std::array<double, 6>& d) {
  HermitianMat6 h;
  for (int i = 0; i < 6; ++i) {
    h.re_[idx(i, i)] = d[static_cast<std::size_t>(i)];
  }
  return h;
}

double HermitianMat6::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t k = 0; k < 36; ++k) {
    s += re_[k] * re_[k] + im_[k] * im_[k];
  }
  return std::sqrt(s);
}

double HermitianMat6::max_abs_diff(const HermitianMat6& o) const {
  double m = 0.0;
  for (std::size_t k = 0; k < 36; ++k) {
    m = std::max(m, std::abs(re_[k] - o.re_[k]));
    m = std::max(m, std::abs(im_[k] - o.im_[k]));
  }
  return m;
}

double HermitianMat6::trace() const {
  double t = 0.0;
  for (int i = 0; i < 6; ++i) {
    t += re_[idx(i, i)];
  }
  return t;
}

HermitianMat6& HermitianMat6::operator+=(const HermitianMat6& o) {
  for (std::size_t k = 0; k < 36; ++k) {
    re_[k] += o.re_[k];
    im_[k] += o.im_[k];
  }
  return *this;
}

HermitianMat6& HermitianMat6::operator-=(const HermitianMat6& o) {
  for (std::size_t k = 0; k < 36; ++k) {
    re_[k] -= o.re_[k];
    im_[k] -= o.im_[k];
  }
  return *this;
}

HermitianMat6& HermitianMat6::operator*=(double s) {
  for (std::size_t k = 0; k < 36; ++k) {
    re_[k] *= s;
    im_[k] *= s;
  }
  return *this;
}

double frobenius_inner(const HermitianMat6& a, const HermitianMat6& b) {
  double s = 0.0;
  const double *ar = a.re(), *ai = a.im(), *br = b.re(), *bi = b.im();
  for (std::size_t k = 0; k < 36; ++k) {
    s += ar[k] * br[k] + ai[k] * bi[k];
  }
  return s;
}

ComplexMat2 pauli_embed(const Vec3& x) {
  using C = std::complex<double>;
  const double a = x.x, b = x.y, c = x.z;
  ComplexMat2 m;
  m.at(0, 0) = C(0.0, -c);
  m.at(0, 1) = C(-b, -a);
  m.at(1, 0) = C(b, -a);
  m.at(1, 1) = C(0.0, c);
  return m;
}

ComplexMat2 edge_gram(const Vec3& x, const Vec3& xp) {
  return pauli_embed(x).hermitian_transpose() * pauli_embed(xp);
}

EdgeAux exact_edge_params(const UnitVec3& x, const UnitVec3& xp) {
  const double a = x.x(), b = x.y(), c = x.z();
  const double ap = xp.x(), bp = xp.y(), cp = xp.z();
  EdgeAux aux;
  aux.d = a * ap + b * bp + c * cp;
  aux.e = bp * c - b * cp;
  aux.f = a * cp - ap * c;
  aux.g = ap * b - a * bp;
  return aux;
}

HermitianMat6 build_edge_matrix(const Vec3& x, const Vec3& xp, const EdgeAux& aux) {
  using C = std::complex<double>;
  HermitianMat6 h;
  for (int i = 0; i < 6; ++i) {
    h.set(i, i, 1.0);
  }

  const ComplexMat2 mx = pauli_embed(x);
  const ComplexMat2 mxp = pauli_embed(xp);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      h.set(i, 2 + j, mx.at(i, j));
      h.set(i, 4 + j, mxp.at(i, j));
    }
  }

  // Block (1,2) is d Id + M_{e,f,g}; at exact parameters it equals
  // M_x^H M_x', the gram matrix of the two embeddings.
  h.set(2, 4, C(aux.d, -aux.g));
  h.set(2, 5, C(-aux.f, -aux.e));
  h.set(3, 4, C(aux.f, -aux.e));
  h.set(3, 5, C(aux.d, aux.g));
  return h;
}

EdgeMatrixParts extract_from_matrix(const HermitianMat6& h, double tol) {
  const auto check = [&](double defect, const char* what) {
    if (!(defect <= tol)) {
      throw Error(ErrorCode::MalformedEdgeMatrix, std::string("edge-matrix pattern violated at ") + what);
    }
  };

  for (int i = 0; i < 6; ++i) {
    check(std::abs(h.at(i, i).real() - 1.0), "diagonal");
  }
  // Entries absent from the parametrization must vanish.
  check(std::abs(h.at(0, 1)), "zero entry (0,1)");
  check(std::abs(h.at(2, 3)), "zero entry (2,3)");
  check(std::abs(h.at(4, 5)), "zero entry (4,5)");

  const auto read_pauli = [&](int col, const char* what) {
    // Block [[-ci, -b-ai], [b-ai, ci]] starting at column `col`, rows 0..1.
    const std::complex<double> m00 = h.at(0, col);
    const std::complex<double> m01 = h.at(0, col + 1);
    const std::complex<double> m10 = h.at(1, col);
    const std::complex<double> m11 = h.at(1, col + 1);
    const Vec3 v{-m01.imag(), -m01.real(), -m00.imag()};
    check(std::abs(m00.real()), what);
    check(std::abs(m11 + m00), what);  // ci vs -ci
    check(std::abs(m10 - std::complex<double>(v.y, -v.x)), what);
    return v;
  };

  EdgeMatrixParts parts;
  parts.x = read_pauli(2, "first embedding block");
  parts.xp = read_pauli(4, "second embedding block");

  const std::complex<double> b00 = h.at(2, 4);
  const std::complex<double> b01 = h.at(2, 5);
  const std::complex<double> b10 = h.at(3, 4);
  const std::complex<double> b11 = h.at(3, 5);
  parts.aux.d = b00.real();
  parts.aux.g = -b00.imag();
  parts.aux.f = -b01.real();
  parts.aux.e = -b01.imag();
  check(std::abs(b11 - std::conj(b00)), "aux block diagonal");
  check(std::abs(b10 - std::complex<double>(parts.aux.f, -parts.aux.e)), "aux block off-diagonal");

  return parts;
}

}  // namespace spheretik
