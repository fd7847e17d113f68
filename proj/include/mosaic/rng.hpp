#pragma once

#include <cstdint>

namespace mosaic {

/// Counter-based 64-bit generator (splitmix64). Fully specified here so
/// that a given seed reproduces the same point sets on every platform;
/// the algorithm name is recorded in output metadata.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "splitmix64";

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace mosaic
