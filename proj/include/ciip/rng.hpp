#pragma once

#include <cstdint>

namespace ciip {

// SplitMix64 (Steele, Lea, Flood; the java.util.SplittableRandom finalizer).
// Chosen because it is tiny, public, and trivially reimplementable from the
// constants alone, which keeps simulation traces stable across
// implementations. Test vectors live in docs/determinism.md.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1): top 53 bits of next() scaled by 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace ciip
