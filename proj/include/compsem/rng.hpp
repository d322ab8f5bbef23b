#pragma once

#include <random>

namespace compsem {

// The unit-interval draw used everywhere randomness is consumed, pinned so
// seeded runs are reproducible across standard library versions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace compsem
