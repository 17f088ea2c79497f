#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubecover/rat.hpp"

namespace cubecover {

/// A partition of a vector's coordinates into S groups whose l2 norms decay
/// geometrically: ||group s|| >= c0 * ||group s+1||. Masses (squared norms)
/// are stored so every comparison stays rational. The last group is the
/// smallest scale; zero coordinates may sit in any group.
struct ScalePartition {
  std::vector<std::vector<int>> groups;  // coordinate indices, largest scale first
  RatVec group_mass;                     // squared l2 norm per group

  const Rat& smallest_scale_sq() const { return group_mass.back(); }
  const std::vector<int>& smallest_scale_coords() const { return groups.back(); }
};

/// True iff the partition is a valid S-scale split of v under c0: groups
/// disjoint, covering at least the support of v, every group of non-zero
/// mass, masses correct, and mass(s) >= c0^2 * mass(s+1) throughout.
/// Used by decomposition checkers to validate carried evidence; shares no
/// code with any detector or constructor.
bool validate_scale_partition(const RatVec& v, const ScalePartition& part, int s_count,
                              const Rat& c0, std::string* why = nullptr);

/// Detector for the scale property. Sorts coordinates by magnitude and runs
/// a feasibility search over contiguous splits; when that fails and the
/// support is small (<= 10 non-zeros) an exhaustive search over ordered
/// partitions decides. Deterministic. Returns the partition found, with
/// zero coordinates attached to the smallest scale.
std::optional<ScalePartition> find_scales(const RatVec& v, int s_count, const Rat& c0);

}  // namespace cubecover
