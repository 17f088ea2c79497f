#pragma once

#include <cstdint>
#include <vector>

#include "cubecover/hyperplane.hpp"
#include "cubecover/params.hpp"

namespace cubecover {

/// The two-plane cover {z1 = 1}, {z1 = -1}. Covers everything but mentions
/// only the first variable, so it is essential only for n = 1.
Cover degenerate_cover(int n);

/// Closed-form lower bound (sqrt(4n+1) + 1) / 2.
double lr_lower_bound(int n);

struct AsymptoticBound {
  double value = 0;
  bool asymptotic = true;  // valid only for large n, never a certificate
};

/// n^alpha / divisor. Flagged asymptotic: not a certified bound for any
/// concrete n.
AsymptoticBound yy_lower_bound(int n, const ParamSet& p);

/// A maximal set of cube vertices lying in a common hyperplane: its affine
/// hull has dimension n-1 and contains no further cube vertex outside the
/// set. Search atom for the exact minimum oracle.
struct CoplanarAtom {
  std::vector<std::uint32_t> vertex_indices;  // sorted enumeration indices
  int affine_dim = 0;
  RatMat normal_space_basis;  // basis of the hull's orthogonal complement
  Hyperplane plane;           // canonical representative through the hull
};

/// All maximal coplanar atoms of the n-cube, n <= 4.
std::vector<CoplanarAtom> enumerate_coplanar_atoms(int n);

/// A hyperplane through the atom's hull. With codimension one the normal is
/// determined; otherwise a deterministic generic combination of the basis
/// maximizing support is used (exposed for direct testing).
Hyperplane plane_from_normal_basis(const RatMat& basis, const RatVec& point);

struct OracleResult {
  int e = 0;
  Cover witness;
  std::uint64_t nodes_visited = 0;
};

struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact minimum size of an essential cover, via branch-and-bound set cover
/// over coplanar atoms with the variable and private-vertex conditions
/// enforced. n <= 3 is guaranteed; n = 4 is best effort under the budget.
OracleResult minimum_essential_cover_size(int n, std::uint64_t node_budget = 20'000'000);

}  // namespace cubecover
