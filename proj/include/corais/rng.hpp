// Copyright (c) 2026 corais contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace corais {

/// Fixed 64-bit generator (splitmix64). Generated streams must be
/// bit-identical across platforms and compilers; standard library
/// distributions are not pinned by the C++ standard, so all draws
/// go through this class.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in the open interval (lo, hi); the exact lower
  /// endpoint is rejected.
  double next_open(double lo, double hi) {
    double u;
    do {
      u = next_unit();
    } while (u == 0.0);
    return lo + (hi - lo) * u;
  }

  /// Uniform double in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Unbiased integer in [0, n), n > 0. Rejection sampling keeps the
  /// draw exact for every n.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  int next_index(int n) {
    return static_cast<int>(next_below(static_cast<std::uint64_t>(n)));
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent substream. Equal (seed, tag) pairs always yield
/// the same stream; adding new tagged streams never perturbs existing ones.
inline Rng substream(std::uint64_t seed, std::uint64_t tag) {
  Rng mixer(seed ^ (0x9e3779b97f4a7c15ull * (tag + 0x632be59bd9b4e019ull)));
  return Rng(mixer.next_u64());
}

}  // namespace corais
