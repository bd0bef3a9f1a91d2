#pragma once

#include <cstdint>
#include <random>

namespace lassopath {

using Rng = std::mt19937_64;

/// Uniform draw in [0,1) with 53 random bits.
///
/// std::uniform_real_distribution is implementation-defined, which would make
/// generated instances differ across standard libraries.  This mapping is
/// fixed, so a seed pins the instance byte for byte.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

/// Uniform draw in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n).  Rejection-free modulo is fine here: n is tiny
/// relative to 2^64, the bias is far below anything observable.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace lassopath
