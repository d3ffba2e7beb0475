#ifndef COLORMATCH_RNG_HPP
#define COLORMATCH_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace colormatch {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream: the i-th output (i = 1, 2, ...) is
/// mix64(seed + i * 0x9e3779b97f4a7c15). Outputs depend only on (seed, i),
/// so any implementation that consumes draws in the same order reproduces
/// the same values bit for bit.
///
/// Satisfies UniformRandomBitGenerator, but library code only uses the
/// helpers below: standard distributions are not portable across
/// standard-library implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Rejection on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

/// Order-sensitive hash of a list of words, used to derive independent
/// per-cell and per-trial seeds from a master seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts) {
    h = mix64(h ^ mix64(p + SplitMix64::kGamma));
  }
  return h;
}

}  // namespace colormatch

#endif  // COLORMATCH_RNG_HPP
