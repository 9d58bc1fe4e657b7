#pragma once

#include <cstdint>

namespace perc3 {

__extension__ using uint128_t = unsigned __int128;

/// SplitMix64 output finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Value number `i` of the counter-based stream keyed by `seed`.
///
/// The stream state is `splitmix64_mix(seed)`; value i is the SplitMix64 output
/// after i+1 increments, so any position can be evaluated independently of
/// the others. Site i of a configuration uses stream value i.
constexpr std::uint64_t stream_value(std::uint64_t seed, std::uint64_t i) noexcept {
  return splitmix64_mix(splitmix64_mix(seed) + (i + 1) * kGoldenGamma);
}

/// Top 53 bits as a double in [0, 1).
constexpr double to_unit_interval(std::uint64_t v) noexcept {
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

/// Seed of sub-experiment `index` under `base`: mix(base, index).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(base) ^ splitmix64_mix(index + kGoldenGamma));
}

/// Sequential SplitMix64 generator; used wherever a plain stream of draws is
/// needed (sampled centers, random pairs). Portable across standard libraries,
/// unlike std:: distributions.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

  constexpr double uniform() noexcept { return to_unit_interval(next()); }

  /// Uniform integer in [0, bound), Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound == 0) return 0;
    uint128_t m = static_cast<uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace perc3
