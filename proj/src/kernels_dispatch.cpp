#include "spheretik/kernels.hpp"

#include <atomic>

#include "spheretik/error.hpp"

namespace spheretik::kernels {

#if defined(SPHERETIK_HAVE_AVX2)
const Ops& avx2();  // defined in kernels_avx2.cpp
#endif

namespace {

std::atomic<Mode> g_mode{Mode::Auto};

}  // namespace

bool avx2_available() {
#if defined(SPHERETIK_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_mode(Mode m) {
  if (m == Mode::Avx2 && !avx2_available()) {
    throw Error(ErrorCode::InvalidArgument, "avx2 kernels not available on this machine");
  }
  g_mode.store(m, std::memory_order_relaxed);
}

Mode mode() { return g_mode.load(std::memory_order_relaxed); }

const Ops& active() {
  switch (mode()) {
    case Mode::Scalar:
      return scalar();
    case Mode::Avx2:
#if defined(SPHERETIK_HAVE_AVX2)
      return avx2();
#else
      return scalar();
#endif
    case Mode::Auto:
    default:
#if defined(SPHERETIK_HAVE_AVX2)
      return avx2_available() ? avx2() : scalar();
#else
      return scalar();
#endif
  }
}

}  // namespace spheretik::kernels
