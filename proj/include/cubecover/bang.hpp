#pragma once

#include <cstdint>
#include <vector>

#include "cubecover/rat.hpp"

namespace cubecover {

/// Symmetric matrix with unit diagonal, offsets gamma and width theta >= 0.
/// For any such instance a sign vector eps with |theta (M eps)_i - gamma_i|
/// >= theta exists, and any single-flip local maximum of
/// F(eps) = theta eps^T M eps - 2 <gamma, eps> realizes it.
struct BangInstance {
  RatMat m;
  RatVec gamma;
  Rat theta;

  int k() const { return static_cast<int>(gamma.size()); }
  void validate() const;  // symmetry, unit diagonal, theta >= 0
};

struct FlipAscentStats {
  std::uint64_t flips = 0;
};

/// Flip ascent from the all-ones vector: repeatedly flip the lowest-index
/// coordinate that strictly increases F. Requires only symmetry and a
/// positive diagonal; at the fixed point every row satisfies
/// |theta (M eps)_i - gamma_i| >= theta * M_ii. Exact arithmetic, so the
/// ascent terminates.
std::vector<int> flip_ascent(const RatMat& m, const RatVec& gamma, const Rat& theta,
                             FlipAscentStats* stats = nullptr);

/// The unit-diagonal statement: margin >= theta on every row.
std::vector<int> solve_bang(const BangInstance& inst, FlipAscentStats* stats = nullptr);

/// Exact row margins |theta (M eps)_i - gamma_i|.
RatVec bang_margins(const BangInstance& inst, const std::vector<int>& eps);

/// True iff every margin is >= theta, evaluated exactly.
bool verify_bang(const BangInstance& inst, const std::vector<int>& eps);

}  // namespace cubecover
