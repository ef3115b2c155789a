#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace gp {

using Rng = std::mt19937_64;

/// Uniform double in [0,1) from the top 53 bits; platform independent.
inline double unit_double(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform double in [lo,hi).
inline double uniform_real(Rng& rng, double lo, double hi) { return lo + (hi - lo) * unit_double(rng); }

/// Uniform integer in [0,n) by rejection; platform independent.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Standard normal via Box-Muller on unit_double draws.
double standard_normal(Rng& rng);

} // namespace gp
