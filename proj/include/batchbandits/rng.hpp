#pragma once

#include <cmath>
#include <cstdint>

namespace batchbandits {

// SplitMix64 finalizer, used as a pseudo-random function on 64-bit inputs.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based random stream. Draw i of stream s under master seed m is
// mix64(key(m, s) + i * phi), so every value is a pure function of
// (master seed, stream id, draw index). Streams derived via split() are
// independent of the parent's draw position, which makes replications
// reproducible under any parallel schedule.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t master_seed, std::uint64_t stream = 0)
      : key_(mix64(master_seed + kPhi * mix64(stream + kPhi))) {}

  SplitRng split(std::uint64_t child) const {
    SplitRng r(0);
    r.key_ = mix64(key_ + kPhi * mix64(child + kPhi));
    r.counter_ = 0;
    return r;
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kPhi); }

  // Uniform on [0,1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in {0, ..., n-1}. Multiply-shift; the O(n/2^64) bias is
  // immaterial at simulation scale.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal via Box-Muller. Uses two uniforms per draw; u1 is taken
  // from (0,1] so the log never sees zero.
  double gaussian() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  static constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace batchbandits
