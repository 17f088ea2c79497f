#include "cubecover/params.hpp"

#include <stdexcept>

#include "cubecover/powers.hpp"

namespace cubecover {

namespace {

void require_unit_interval(const Rat& e, const char* name) {
  if (e.sign() <= 0 || e >= Rat(1))
    throw std::invalid_argument(std::string("params: ") + name + " must lie in (0,1)");
}

}  // namespace

void ParamSet::validate() const {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(sparsity_exp, "sparsity_exp");
  require_unit_interval(col_mass_exp, "col_mass_exp");
  require_unit_interval(col_mass_exp_pre, "col_mass_exp_pre");
  require_unit_interval(cond1_exp, "cond1_exp");
  require_unit_interval(theta_exp, "theta_exp");
  require_unit_interval(m2_exp, "m2_exp");
  require_unit_interval(variance_cut_exp, "variance_cut_exp");
  require_unit_interval(scale_count_exp, "scale_count_exp");
  if (c0 <= Rat(1)) throw std::invalid_argument("params: c0 must exceed 1");
  if (divisor.sign() <= 0) throw std::invalid_argument("params: divisor must be positive");
  if (cond2_factor.sign() <= 0) throw std::invalid_argument("params: cond2_factor must be positive");
  if (scale_count_override && *scale_count_override < 2)
    throw std::invalid_argument("params: scale_count_override must be >= 2");
  if (max_tries < 1) throw std::invalid_argument("params: max_tries must be >= 1");
}

int ParamSet::scale_count(const Int& n) const {
  if (scale_count_override) return *scale_count_override;
  Int s = floor_pow(n, scale_count_exp);
  if (s < 1) return 1;
  return static_cast<int>(s.get_si());
}

}  // namespace cubecover
