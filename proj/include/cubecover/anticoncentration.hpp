#pragma once

#include <cstdint>
#include <vector>

#include "cubecover/cube.hpp"
#include "cubecover/rat.hpp"
#include "cubecover/rng.hpp"

namespace cubecover {

/// Product distribution on the sign cube: independent coordinates,
/// marginals[j] = Pr[x_j = +1]. sigma_sq is the exact variance of the
/// coordinate sum.
struct ProductMeasure {
  int n = 0;
  RatVec marginals;

  static ProductMeasure uniform(int n);
  void validate() const;
  Rat sigma_sq() const;  // sum of 4 p_j (1 - p_j)
  Vertex sample(SplitMix64& rng) const;
};

/// Exact Pr[<x, v> = a] under the product measure, by dynamic programming
/// over achievable partial sums (entries scaled to integers when possible,
/// rational-keyed otherwise). Guarded by the work bound.
Rat atom_probability(const RatVec& v, const Rat& a, const ProductMeasure& p);

/// Exact hit count |{x in {+-1}^n : <x, v> = a}| for the uniform measure.
Int uniform_atom_count(const RatVec& v, const Rat& a);

/// All level counts of <x, v> at once under the uniform measure, after
/// clearing denominators: counts[i] vertices hit the level (i - reach) /
/// scale_den. One dynamic-programming pass; n <= 62 and the usual range
/// guard apply.
struct LevelCounts {
  long reach = 0;
  Int scale_den = 1;
  std::vector<std::uint64_t> counts;

  Rat level(std::size_t i) const { return Rat(Int(static_cast<long>(i) - reach), scale_den); }
};
LevelCounts uniform_level_counts(const RatVec& v);

struct LoCheck {
  Rat probability;
  double bound = 0;  // 1 / sqrt(sparsity), for display
  bool holds = false;
};

/// probability <= 1 / sqrt(||v||_0), decided exactly by squaring.
LoCheck lo_check(const RatVec& v, const Rat& a);

struct AntichainResult {
  std::vector<Vertex> members;         // level set after the sign flip
  std::vector<std::int8_t> flip_signs; // s with s_j v_j > 0
  bool certified = false;              // pairwise incomparability, exhaustive
};

/// Level set { x : <x, v * s> = mu } for full-support v, with the
/// exhaustive antichain certificate.
AntichainResult antichain_of_level_set(const RatVec& v, const Rat& mu,
                                       int guard = kDefaultEnumGuard);

struct AntichainTrial {
  RatVec v;
  Rat level;
  Rat mass;
  double mass_sigma = 0;  // mass * sigma_P
};

struct AntichainMassReport {
  Rat sigma_sq;
  std::vector<AntichainTrial> trials;
  double max_mass_sigma = 0;
};

/// Random level-set masses under P, reported with mass * sigma_P; the best
/// constant over the family is the quantity of interest.
AntichainMassReport antichain_mass_experiment(const ProductMeasure& p, int trials,
                                              std::uint64_t seed);

struct ScalesTrial {
  int s_count = 0;
  RatVec vector;
  Rat probability;  // Pr[|<x,v> - a| <= b * delta], exact
};

struct ScalesDecayReport {
  std::vector<ScalesTrial> trials;
  bool monotone = false;  // probability non-increasing in S over the family
};

/// Exact tail probabilities for a generated family of vectors with exactly
/// S scales (one vector per S in s_counts), smallest scale delta, decay c0.
/// coords_per_scale controls the family shape.
ScalesDecayReport scales_decay_experiment(const std::vector<int>& s_counts, const Rat& c0,
                                          const Rat& delta, const Rat& b, const Rat& a,
                                          int coords_per_scale = 2);

}  // namespace cubecover
