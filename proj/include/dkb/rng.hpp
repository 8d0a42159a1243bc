#pragma once

#include <cstdint>
#include <vector>

namespace dkb {

/// Counter-based 64-bit generator (splitmix64 finalizer over an additive
/// Weyl sequence). Pure integer arithmetic, so streams are identical across
/// platforms and thread counts; split() derives an independent stream per
/// replicate.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - (~0ull % bound + 1) % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x > limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Seed of an independent stream for a substream id.
  std::uint64_t derive_seed(std::uint64_t stream) const {
    return mix(state_ ^ mix(0xA0761D6478BD642Full * (stream + 1)));
  }

  /// Independent stream for a substream id.
  SplitMix64 split(std::uint64_t stream) const {
    return SplitMix64(derive_seed(stream));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t k = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[k]);
    }
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t state_;
};

}  // namespace dkb
