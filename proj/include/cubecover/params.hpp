#pragma once

#include <cstdint>
#include <optional>

#include "cubecover/rat.hpp"

namespace cubecover {

/// Every exponent and constant of the construction, as configurable knobs.
/// Defaults are the ones the analysis fixes; c0 is a free constant that the
/// analysis imports without a value (default 2). Exponents are kept as
/// exact rationals so threshold comparisons stay exact.
struct ParamSet {
  Rat alpha = Rat::parse("0.52");             // premise: k <= n^alpha / divisor
  Rat divisor = Rat::parse("10");
  Rat sparsity_exp = Rat::parse("0.04");      // column sparsity threshold n^e
  Rat col_mass_exp = Rat::parse("0.196");     // final column mass bound n^-e
  Rat col_mass_exp_pre = Rat::parse("0.1961");  // in-loop column mass trigger n^-e
  Rat cond1_exp = Rat::parse("0.332");        // row-pruning branch: k1 > n1^e
  Rat cond2_factor = Rat::parse("4");         // row-excision branch: nnz <= f*k1^2
  Rat theta_exp = Rat::parse("0.078");        // margin width theta = n^e
  Rat m2_exp = Rat::parse("0.7171");          // moved-column budget |M2| <= n^e
  Rat variance_cut_exp = Rat::parse("0.151"); // diagnostic split for sigma_i^2
  Rat scale_count_exp = Rat::parse("0.001");  // S = floor(n^e) unless overridden
  std::optional<int> scale_count_override;    // tests always set this (>= 2)
  Rat c0 = Rat::parse("2");                   // scale decay constant, > 1
  std::uint64_t seed = 0;
  int max_tries = 500;

  void validate() const;

  /// Scale count S for ambient dimension n.
  int scale_count(const Int& n) const;
};

}  // namespace cubecover
