#pragma once

#include <cstdint>
#include <random>

namespace spectral_walks {

// Deterministic generator. Only the raw 64-bit output of mt19937_64 is used,
// which the standard pins bit-for-bit; distributions are derived by hand so
// streams agree across standard libraries.
class Rng {
  __extension__ using Wide = unsigned __int128;

 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Fair sign, +1 or -1.
  int sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's rejection method).
  std::uint64_t uniform_index(std::uint64_t bound) {
    Wide product = static_cast<Wide>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<Wide>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the independent stream used by trial `trial` of an experiment seeded with `seed`.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (trial + 1));
}

}  // namespace spectral_walks
