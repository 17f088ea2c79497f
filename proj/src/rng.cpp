#include "cubecover/rng.hpp"

#include <stdexcept>

namespace cubecover {

Int rand_below(SplitMix64& rng, const Int& bound) {
  if (bound <= 0) throw std::invalid_argument("rand_below: bound must be positive");
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  std::uint64_t top_mask = top_bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  while (true) {
    Int value = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t chunk = rng.next();
      if (w + 1 == words) chunk &= top_mask;
      Int part(static_cast<unsigned long>(chunk >> 32));
      part <<= 32;
      part += static_cast<unsigned long>(chunk & 0xFFFFFFFFULL);
      part <<= 64 * static_cast<unsigned long>(w);
      value += part;
    }
    if (value < bound) return value;
  }
}

bool bernoulli(SplitMix64& rng, const Rat& p) {
  if (p.sign() < 0 || p > Rat(1)) throw std::invalid_argument("bernoulli: p outside [0,1]");
  if (p.is_zero()) return false;
  if (p == Rat(1)) return true;
  Int u = rand_below(rng, p.den());
  return u < p.num();
}

}  // namespace cubecover
