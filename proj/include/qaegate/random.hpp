#pragma once

#include <cstdint>
#include <random>

namespace qaegate {

// Seeded draws used for datasets and training; plain engine output instead of
// std::uniform_real_distribution so that streams are identical across
// standard libraries.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + uniform_unit(rng) * (hi - lo);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t size) {
  return static_cast<std::size_t>(rng() % size);
}

}  // namespace qaegate
