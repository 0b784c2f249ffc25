#pragma once

#include <cstdint>

namespace wsat {

/// Deterministic 64-bit generator (splitmix64, Steele/Lea/Flood 2014).
///
/// Chosen over std::mt19937 because the stream, including the conversion
/// to doubles and bounded integers below, is fully pinned by this header:
/// the same seed reproduces the same instance on every platform and
/// standard library. Algorithm version: wsat-rng-1 (splitmix64).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be nonzero.
  /// Rejection from the top of the range, so the result is unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

private:
  std::uint64_t state_;
};

/// Stateless mix of two words through one splitmix64 step. Used to derive
/// independent per-trial seeds: chain the master seed with cell parameters
/// and the trial index so any subset of trials can be regenerated alone.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
  return g.next();
}

} // namespace wsat
