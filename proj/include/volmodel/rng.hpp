#pragma once

#include <cstdint>

namespace volmodel {

// Counter-based 64-bit generator (splitmix64 mixing function). Unlike the
// std:: distributions this is bit-reproducible across platforms, and
// substreams derived from (seed, index) let per-window generation run in
// parallel while staying deterministic.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in the open interval (0, 1); never returns 0 or 1 exactly.
  double next_unit() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Independent substream for (seed, index).
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed);
    const std::uint64_t folded = g.next() ^ (0x9E3779B97F4A7C15ull * (index + 1));
    return SplitMix64(folded);
  }

 private:
  std::uint64_t state_;
};

}  // namespace volmodel
