#pragma once

#include <cstdint>

namespace robustmean {

struct Seed {
  std::uint64_t value = 0;
};

// Counter-based uniform stream (splitmix64 finalizer over a derived key).
// Substream r of a seed is derived, not advanced, so replicate r produces
// the same draws no matter how many workers run or in what order.
class UniformStream {
 public:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  UniformStream(Seed seed, std::uint64_t stream)
      : key_(mix(mix(seed.value) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  // Next double, strictly inside (0, 1).
  double next() {
    const std::uint64_t z = mix(key_ + 0x9e3779b97f4a7c15ULL * counter_++);
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace robustmean
