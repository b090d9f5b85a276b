#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "spheretik/eig6.hpp"
#include "spheretik/error.hpp"
#include "spheretik/kernels.hpp"
#include "spheretik/rng.hpp"

using namespace spheretik;
using spheretik::testing::random_hermitian;

namespace {

// restores Auto on scope exit so a failing check cannot poison other tests
struct ModeGuard {
  ~ModeGuard() { kernels::set_mode(kernels::Mode::Auto); }
};

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-10.0, 10.0);
  return v;
}

const std::size_t kSizes[] = {0, 1, 3, 4, 5, 8, 17, 1003};

}  // namespace

TEST_CASE("elementwise kernels match the scalar reference bit for bit") {
  if (!kernels::avx2_available()) return;
  const kernels::Ops& s = kernels::scalar();
  ModeGuard guard;
  kernels::set_mode(kernels::Mode::Avx2);
  const kernels::Ops& v = kernels::active();
  REQUIRE(std::string(v.name) != std::string(s.name));

  Rng rng(31);
  for (std::size_t n : kSizes) {
    const std::vector<double> x = random_vector(rng, n);
    std::vector<double> ys = random_vector(rng, n);
    std::vector<double> yv = ys;
    s.axpy(n, 1.7, x.data(), ys.data());
    v.axpy(n, 1.7, x.data(), yv.data());
    CHECK(ys == yv);

    const std::vector<double> z = random_vector(rng, n);
    const std::vector<double> g = random_vector(rng, n);
    std::vector<double> zn_s(n), zb_s(n), zn_v(n), zb_v(n);
    s.step_extrapolate(n, z.data(), g.data(), 0.3125, zn_s.data(), zb_s.data());
    v.step_extrapolate(n, z.data(), g.data(), 0.3125, zn_v.data(), zb_v.data());
    CHECK(zn_s == zn_v);
    CHECK(zb_s == zb_v);
  }
}

TEST_CASE("reductions match the scalar reference bit for bit") {
  if (!kernels::avx2_available()) return;
  const kernels::Ops& s = kernels::scalar();
  ModeGuard guard;
  kernels::set_mode(kernels::Mode::Avx2);
  const kernels::Ops& v = kernels::active();

  Rng rng(32);
  for (std::size_t n : kSizes) {
    const std::vector<double> a = random_vector(rng, n);
    const std::vector<double> b = random_vector(rng, n);
    CHECK(s.dot(n, a.data(), b.data()) == v.dot(n, a.data(), b.data()));
    CHECK(s.max_abs(n, a.data()) == v.max_abs(n, a.data()));
    CHECK(s.max_abs_diff(n, a.data(), b.data()) == v.max_abs_diff(n, a.data(), b.data()));
  }
}

TEST_CASE("batched projection and minimum eigenvalue agree across kernels") {
  if (!kernels::avx2_available()) return;
  const kernels::Ops& s = kernels::scalar();
  ModeGuard guard;
  kernels::set_mode(kernels::Mode::Avx2);
  const kernels::Ops& v = kernels::active();

  Rng rng(33);
  for (std::size_t count = 1; count <= 9; ++count) {
    std::vector<HermitianMat6> mats(count);
    for (auto& m : mats) m = random_hermitian(rng, 2.0);
    std::vector<HermitianMat6> copy = mats;

    CHECK(s.psd_project_batch(mats.data(), count) == 0);
    CHECK(v.psd_project_batch(copy.data(), count) == 0);
    for (std::size_t i = 0; i < count; ++i) {
      CHECK(mats[i].max_abs_diff(copy[i]) <= 1e-12);
      CHECK(min_eigenvalue(copy[i]) >= -1e-10);
    }

    std::vector<HermitianMat6> fresh(count);
    for (auto& m : fresh) m = random_hermitian(rng, 2.0);
    std::vector<double> eig_s(count), eig_v(count);
    CHECK(s.min_eig_batch(fresh.data(), count, eig_s.data()) == 0);
    CHECK(v.min_eig_batch(fresh.data(), count, eig_v.data()) == 0);
    for (std::size_t i = 0; i < count; ++i) {
      CHECK(std::abs(eig_s[i] - eig_v[i]) <= 1e-12);
    }
  }
}

TEST_CASE("batched scalar kernels agree with the single-matrix routines") {
  const kernels::Ops& s = kernels::scalar();
  Rng rng(34);
  std::vector<HermitianMat6> mats(5);
  for (auto& m : mats) m = random_hermitian(rng);
  std::vector<HermitianMat6> copy = mats;

  CHECK(s.psd_project_batch(mats.data(), mats.size()) == 0);
  std::vector<double> eigs(copy.size());
  CHECK(s.min_eig_batch(copy.data(), copy.size(), eigs.data()) == 0);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    CHECK(mats[i].max_abs_diff(project_psd(copy[i])) <= 1e-12);
    CHECK(std::abs(eigs[i] - min_eigenvalue(copy[i])) <= 1e-12);
  }

  // empty batches are a no-op
  CHECK(s.psd_project_batch(nullptr, 0) == 0);
  CHECK(s.min_eig_batch(nullptr, 0, nullptr) == 0);
}

TEST_CASE("mode selection") {
  ModeGuard guard;

  kernels::set_mode(kernels::Mode::Scalar);
  CHECK(kernels::mode() == kernels::Mode::Scalar);
  CHECK(std::string(kernels::active().name) == "scalar");

  kernels::set_mode(kernels::Mode::Auto);
  CHECK(kernels::mode() == kernels::Mode::Auto);
  if (kernels::avx2_available()) {
    CHECK(std::string(kernels::active().name) == "avx2");
    kernels::set_mode(kernels::Mode::Avx2);
    CHECK(std::string(kernels::active().name) == "avx2");
  } else {
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_THROWS_AS(kernels::set_mode(kernels::Mode::Avx2), Error);
  }
}
