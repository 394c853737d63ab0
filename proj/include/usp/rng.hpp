#pragma once

#include <cstdint>

namespace usp {

// Counter-based splittable generator built on the splitmix64 mixer.
// A stream is fully determined by (seed, stream index), so sampling
// loops are reproducible independently of thread count or scheduling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    // decorrelate the stream index from the seed before seeding
    return SplitMix64(mix(seed ^ mix(index + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // uniform on [0, 1): 53 random mantissa bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform on [lo, hi)
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // uniform integer in [0, n), n > 0; rejection keeps it unbiased
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace usp
