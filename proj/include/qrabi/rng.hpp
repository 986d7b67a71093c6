#pragma once

#include <cstdint>

namespace qrabi {

// SplitMix64 (Steele/Lea/Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014). One 64-bit word of state advanced by the golden
// gamma; the output mix is invertible, so distinct streams never collide.
// Chosen because derived streams (seed, stream_id) are cheap and the whole
// algorithm fits in a dozen lines, which keeps scan results reproducible
// across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 mantissa bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

// Deterministic sub-stream seed for (master_seed, stream_id): hash the pair
// through one SplitMix64 step so neighbouring ids give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  SplitMix64 mix(master_seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
  return mix.next_u64();
}

}  // namespace qrabi
