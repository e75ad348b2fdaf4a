#pragma once

#include <cmath>
#include <cstdint>

namespace gcx {

/// splitmix64; small, fast and reproducible across platforms. Used both as a
/// generator and to derive independent per-task streams from (seed, index).
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0,1): k * 2^-53 with k drawn from 53 random bits, so every
  /// sample is an exact dyadic rational with denominator 2^53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1,1] (dyadic, denominator 2^52).
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  /// Standard normal via Box-Muller (uses only this stream).
  double gaussian() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }
};

/// Stream for task `index` under master `seed`; identical regardless of how
/// tasks are partitioned across threads.
inline SplitMix64 task_rng(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mixer.next();
  return mixer;
}

}  // namespace gcx
