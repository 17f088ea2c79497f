#pragma once

#include <optional>

#include "cubecover/rat.hpp"

namespace cubecover {

/// Rank of a rational matrix (rows may be empty).
int rank(const RatMat& rows);

/// Affine rank of a point set: rank of { p - p0 }.
int affine_rank(const RatMat& points);

/// One non-zero vector d with <d, row> = 0 for every row, supported on the
/// given columns, or nullopt if the rows have full rank there. Forward
/// elimination is fraction-free (Bareiss); the result is normalized so its
/// first non-zero entry is positive. Deterministic.
std::optional<RatVec> nullspace_vector(const RatMat& rows, const std::vector<int>& columns,
                                       int dimension);

/// Full basis of the null space of the row span (vectors of length `cols`).
/// Deterministic: free variables in increasing column order.
RatMat nullspace_basis(const RatMat& rows, int cols);

}  // namespace cubecover
