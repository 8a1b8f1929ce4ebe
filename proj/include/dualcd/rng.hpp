#pragma once

#include <cmath>
#include <cstdint>

namespace dualcd {

// SplitMix64 generator. Fixed algorithm so that runs are reproducible across
// platforms from the seed alone; same seed => identical draw sequence.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, s) via multiply-shift with rejection.
  std::uint64_t bounded(std::uint64_t s) {
    std::uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * s;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < s) {
      const std::uint64_t t = (-s) % s;
      while (lo < t) {
        x = next();
        m = static_cast<__uint128_t>(x) * s;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  int index(int m) { return static_cast<int>(bounded(static_cast<std::uint64_t>(m))); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Box-Muller; deliberately not std::normal_distribution, whose stream is
  // implementation-defined and would break cross-platform reproducibility.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Seed wrapper passed to solvers; keeps call sites explicit about determinism.
struct RngSpec {
  std::uint64_t seed = 0;
  SplitMix64 make() const { return SplitMix64(seed); }
};

}  // namespace dualcd
