#ifndef CACHENET_RANDOM_HPP
#define CACHENET_RANDOM_HPP

#include <cstdint>
#include <random>

namespace cachenet {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; gives independent sub-streams from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

}  // namespace cachenet

#endif  // CACHENET_RANDOM_HPP
