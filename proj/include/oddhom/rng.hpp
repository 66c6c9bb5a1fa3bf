#ifndef ODDHOM_RNG_HPP
#define ODDHOM_RNG_HPP

#include <cstdint>

namespace oddhom {

/// SplitMix64: counter-based 64-bit generator (Steele, Lea, Flood).
/// The state advances by a fixed odd constant and the output is a bijective
/// mix of the counter, so streams for fixed seeds are reproducible across
/// platforms with plain integer arithmetic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 mantissa bits of the next output.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + next_unit() * (hi - lo); }

  /// Uniform integer in [0, bound) by rejection-free scaling (bound > 0).
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace oddhom

#endif  // ODDHOM_RNG_HPP
