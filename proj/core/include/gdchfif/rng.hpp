#pragma once

#include <cstdint>
#include <random>

namespace gdchfif {

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound), unbiased by rejection; same sequence on
/// every standard library.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace gdchfif
