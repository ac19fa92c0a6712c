#pragma once

#include <cstdint>
#include <random>

namespace qbc {

// Callers own their generator; nothing in the library keeps RNG state.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic per-sample seed so records are identical for any worker count.
inline std::uint64_t sample_seed(std::uint64_t master, std::uint64_t dim,
                                 std::uint64_t eps_index, std::uint64_t sample_index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ dim);
  h = splitmix64(h ^ eps_index);
  h = splitmix64(h ^ sample_index);
  return h;
}

}  // namespace qbc
