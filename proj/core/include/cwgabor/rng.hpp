#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace cwgabor {

// Counter-based splittable stream: a trial's randomness depends only on
// (master seed, stream id), never on scheduling or thread count.
class SplitRng {
 public:
  SplitRng(std::uint64_t master_seed, std::uint64_t stream_id)
      : state_(mix(mix(master_seed) ^ mix(stream_id ^ 0x9e3779b97f4a7c15ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in (0, 1], safe as a log argument
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // unbiased uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  // standard normal via Box-Muller (self-contained for cross-platform
  // bit-reproducibility; library distributions are implementation-defined)
  double next_gauss() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // circularly-symmetric complex Gaussian CN(0, variance)
  std::complex<double> next_cgauss(double variance = 1.0) {
    const double u1 = next_double_open();
    const double u2 = next_double();
    const double mag = std::sqrt(-variance * std::log(u1));
    return {mag * std::cos(2.0 * M_PI * u2), mag * std::sin(2.0 * M_PI * u2)};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace cwgabor
