#pragma once

#include <cstdint>
#include <limits>
#include <cmath>

namespace wavespec {

/// Counter-based random stream. Output i is a bijective hash of (key, i), so a
/// stream's state is just its key and position, and child streams obtained via
/// derive() are statistically independent of the parent and of each other.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  /// Child stream for replicate/component `index`; never overlaps the parent.
  static RandomStream derive(std::uint64_t seed, std::uint64_t index) {
    RandomStream s;
    s.key_ = mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + mix(index + 0xbb67ae8584caa73bULL));
    return s;
  }
  RandomStream child(std::uint64_t index) const {
    RandomStream s;
    s.key_ = mix(key_ + mix(index + 0x3c6ef372fe94f82bULL));
    return s;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal by the polar method; no cached second variate, so the
  /// value depends only on the stream position.
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  std::uint64_t position() const { return counter_; }

 private:
  // SplitMix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace wavespec
