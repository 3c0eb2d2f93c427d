#pragma once

#include <cstdint>

namespace sg {

// Counter-free splitmix64 stream. The algorithm is fixed so that seeded
// experiments reproduce bit-identically across platforms; std::mt19937 and
// std::normal_distribution are deliberately avoided because their output is
// implementation-defined.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0. Unbiased via rejection.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Standard normal variate via the Box-Muller transform.
  double gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Derives an independent per-trial stream seed from a master seed.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace sg
