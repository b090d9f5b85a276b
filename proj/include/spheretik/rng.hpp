#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spheretik {

/// Seeded random source with hand-rolled conversions. std::mt19937_64 output
/// is pinned by the standard, but the standard *distributions* are not, so we
/// never use them: all draws below are bit-reproducible on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on the open interval (0,1): 53-bit mantissa, midpoint offset.
  double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n >= 1. Modulo bias is irrelevant for the
  /// small n used here (index shuffles), and the result stays reproducible.
  std::uint64_t uniform_index(std::uint64_t n) { return gen_() % n; }

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace spheretik
