#pragma once

#include <cstdint>
#include <limits>

namespace geolab {

/// Identifies one reproducible random stream. Equal (seed, stream) pairs
/// always yield the same sequence.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const RngSeed&) const = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a sub-stream index from a parent stream and a child key, e.g.
/// (graph index, pair index). Collisions are as unlikely as 64-bit hashes.
constexpr std::uint64_t substream(std::uint64_t parent, std::uint64_t child) noexcept {
  return mix64(parent ^ mix64(child + 0x632be59bd9b4e019ULL));
}

/// Counter-based generator: output i is mix64(key + i * golden), where the key
/// is a hash of (seed, stream). Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(RngSeed s) noexcept
      : key_(mix64(s.seed ^ 0x2545f4914f6cdd1dULL) ^ mix64(s.stream * 0xd1b54a32d192ed03ULL + 1)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

  /// Unbiased integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace geolab
