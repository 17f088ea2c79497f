#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubecover/hyperplane.hpp"

namespace cubecover {

/// Verdicts for the three essentiality conditions plus the sparsity law,
/// each with a witness so downstream consumers can reuse them:
///  - e1: every vertex lies on some plane (witness: an uncovered vertex)
///  - e2: every variable appears in some normal (witness: missing indices)
///  - e3: every plane covers some vertex privately (witness per plane)
///  - sparsity law: every normal has fewer than 2k non-zero entries
struct EssentialityReport {
  bool e1_holds = false;
  std::optional<Vertex> e1_witness;  // present iff !e1_holds
  bool e2_holds = false;
  std::vector<int> missing_variables;
  bool e3_holds = false;
  std::vector<std::optional<Vertex>> private_witnesses;  // one slot per plane
  bool sparsity_ok = false;
  std::vector<int> sparsity_offenders;

  bool essential() const { return e1_holds && e2_holds && e3_holds; }
};

/// Up to `limit` vertices covered by no plane, in enumeration order.
/// Empty iff the planes form a cover.
std::vector<Vertex> uncovered_vertices(const Cover& c, std::size_t limit,
                                       int guard = kDefaultEnumGuard, int threads = 1);

/// Per-vertex count of planes containing it, indexed by vertex index.
/// Shared kernel for the cover and minimality conditions; memory-bound,
/// so the guard is lower than for streaming enumeration.
std::vector<std::uint32_t> coverage_counts(const Cover& c, int guard = 24);

/// Exhaustive verification of all conditions in one enumeration pass.
EssentialityReport check_essential(const Cover& c, int guard = kDefaultEnumGuard,
                                   int threads = 1);

}  // namespace cubecover
