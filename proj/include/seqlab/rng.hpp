#pragma once

#include <cstdint>

namespace seqlab::rng {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based generator. Draw k of substream (seed, index) is
/// mix64(key + k * golden) with key = mix64(mix64(seed) ^ mix64(index)), so any
/// draw is a pure function of (seed, index, k) and independent of scheduling.
class Stream {
 public:
  constexpr Stream(std::uint64_t seed, std::uint64_t index)
      : key_(mix64(mix64(seed) ^ mix64(~index))) {}

  constexpr std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ull * counter_++); }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace seqlab::rng
