#pragma once

#include "cubecover/rat.hpp"

namespace cubecover {

enum class Round { Down, Up };

/// Directed rational bound on n^e for integer n >= 1 and rational e >= 0,
/// with 2^-bits resolution. Round::Down returns a value <= n^e,
/// Round::Up a value >= n^e; exact powers are returned exactly.
Rat pow_bound(const Int& n, const Rat& e, Round dir, unsigned bits = 64);

/// Directed rational bound on sqrt(r) for rational r >= 0.
Rat sqrt_bound(const Rat& r, Round dir, unsigned bits = 64);

/// Exact floor(n^e) for integer n >= 1 and rational e >= 0.
Int floor_pow(const Int& n, const Rat& e);

/// Exact sign of x - n^e for integer n >= 1 and rational e of either sign.
/// Decided by integer power comparison (a cheap log2 filter handles the
/// typical case without big-integer powers).
int cmp_rat_vs_pow(const Rat& x, const Int& n, const Rat& e);

inline bool rat_less_than_pow(const Rat& x, const Int& n, const Rat& e) {
  return cmp_rat_vs_pow(x, n, e) < 0;
}
inline bool rat_greater_than_pow(const Rat& x, const Int& n, const Rat& e) {
  return cmp_rat_vs_pow(x, n, e) > 0;
}

}  // namespace cubecover
