#pragma once

#include <cstdint>
#include <vector>

#include "cubecover/cube.hpp"
#include "cubecover/rat.hpp"
#include "cubecover/rng.hpp"

namespace cubecover {

/// Result of rounding a point of the solid cube towards a vertex while
/// preserving its inner products with a set of row vectors: the point w
/// with ||w||_inf <= 1 and at most (number of rows) coordinates left
/// strictly inside (-1, 1).
struct RoundedPoint {
  RatVec w;
  std::vector<int> fractional_coords;
};

/// Walks z along null-space directions of the rows restricted to the still
/// fractional coordinates, freezing one coordinate at +-1 per step. Exact:
/// <w, row_i> = <z, row_i> for every i, ||w||_inf <= 1, and the fractional
/// set ends no larger than the number of rows.
/// Pre: ||z||_inf <= 1 and rows.size() < z.size().
RoundedPoint round_preserving(const RatMat& rows, const RatVec& z);

/// Independent random completion: coordinate j becomes +1 with probability
/// exactly (1 + w_j) / 2, so the result x' = delta + w is a cube vertex
/// with E[x'] = w. Deterministic given the generator state.
std::vector<std::int8_t> sample_rounding(const RatVec& w, SplitMix64& rng);

/// Seeded convenience wrapper returning a Vertex.
Vertex sample_rounding_vertex(const RatVec& w, std::uint64_t seed);

}  // namespace cubecover
