#pragma once

#include <cstdint>

#include "sgini/special_functions.hpp"

namespace sgini {

/// SplitMix64 finalizer; also used to hash seeds into stream states.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream. Replicate b of a run derives its own
/// stream from (seed, b, ...), so results do not depend on the execution
/// schedule and are bit-for-bit reproducible for a fixed seed.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : state_(mix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); redraws the (probability 2^-53) exact zero.
  double next_open01() {
    double u = next_double();
    while (u == 0.0) u = next_double();
    return u;
  }

  /// Uniform index in {0, ..., bound-1} (Lemire multiply-shift with rejection).
  std::uint64_t next_index(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t t = -bound % bound;
      while (lo < t) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal draw via the inverse cdf.
  double next_normal() { return normal_quantile(next_open01()); }

private:
  std::uint64_t state_;
};

inline std::uint64_t combine_seed(std::uint64_t h, std::uint64_t w) {
  return mix64(h ^ (w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2)));
}

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t a) {
  return RngStream(combine_seed(mix64(seed), a));
}

inline RngStream derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return RngStream(combine_seed(combine_seed(mix64(seed), a), b));
}

}  // namespace sgini
