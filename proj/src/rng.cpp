#include "sparsegreedy/rng.hpp"

#include <cmath>

namespace sg {

std::uint64_t SplitMix64::uniform_below(std::uint64_t bound) {
  // Rejection sampling over the top of the range to avoid modulo bias.
  const std::uint64_t threshold = -bound % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double SplitMix64::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  // Two finalizer rounds over (seed, index); cheap and collision-free enough
  // for trial counts used here.
  SplitMix64 mix(master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  mix.next();
  return mix.next();
}

}  // namespace sg
