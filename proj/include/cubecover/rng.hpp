#pragma once

#include <cstdint>

#include "cubecover/rat.hpp"

namespace cubecover {

/// SplitMix64. The stream is fixed and platform-independent: all random
/// choices in the project flow from one of these, seeded from the single
/// --seed flag via derive_seed.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// Derived stream for a parallel task or retry attempt: documented as
/// SplitMix64(base) advanced once, xored with the stream id scrambled by
/// a second SplitMix64 step. Distinct streams never share state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  SplitMix64 a(base);
  SplitMix64 b(stream ^ 0xD1B54A32D192ED03ULL);
  return a.next() ^ b.next();
}

/// Uniform sign: +1 or -1 (one generator step per sign).
inline std::int8_t rand_sign(SplitMix64& rng) { return (rng.next() & 1u) ? std::int8_t{1} : std::int8_t{-1}; }

/// Uniform integer in [0, bound) for bound >= 1, by rejection over
/// fixed-width chunks (least significant 64-bit word drawn first).
Int rand_below(SplitMix64& rng, const Int& bound);

/// Exact Bernoulli draw: true with probability exactly p (0 <= p <= 1).
bool bernoulli(SplitMix64& rng, const Rat& p);

}  // namespace cubecover
