#include "cubecover/bang.hpp"

#include <stdexcept>

namespace cubecover {

void BangInstance::validate() const {
  std::size_t k = gamma.size();
  if (m.size() != k) throw std::invalid_argument("bang: matrix/gamma size mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i].size() != k) throw std::invalid_argument("bang: matrix not square");
    if (m[i][i] != Rat(1)) throw std::invalid_argument("bang: diagonal entry not one");
    for (std::size_t j = i + 1; j < k; ++j)
      if (m[i][j] != m[j][i]) throw std::invalid_argument("bang: matrix not symmetric");
  }
  if (theta.sign() < 0) throw std::invalid_argument("bang: theta must be >= 0");
}

std::vector<int> flip_ascent(const RatMat& m, const RatVec& gamma, const Rat& theta,
                             FlipAscentStats* stats) {
  const std::size_t k = gamma.size();
  std::vector<int> eps(k, 1);
  if (k == 0) return eps;

  // row sums (M eps)_i maintained incrementally
  RatVec row_sum(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rat acc;
    for (std::size_t j = 0; j < k; ++j) acc += m[i][j];
    row_sum[i] = acc;
  }

  std::uint64_t flips = 0;
  // F is bounded above on the finite sign cube and strictly increases at
  // each flip, so this terminates; the cap is a defect detector only
  const std::uint64_t cap = 1'000'000;
  while (true) {
    int flip = -1;
    for (std::size_t i = 0; i < k; ++i) {
      // delta F = -4 eps_i (theta (M eps)_i - gamma_i) + 4 theta M_ii
      Rat margin = theta * row_sum[i] - gamma[i];
      Rat delta = Rat(-4) * Rat(eps[i]) * margin + Rat(4) * theta * m[i][i];
      if (delta.sign() > 0) {
        flip = static_cast<int>(i);
        break;
      }
    }
    if (flip < 0) break;
    if (++flips > cap) throw std::logic_error("flip_ascent: cap exceeded");
    std::size_t f = static_cast<std::size_t>(flip);
    Rat change = Rat(-2 * eps[f]);
    for (std::size_t i = 0; i < k; ++i) row_sum[i] += change * m[i][f];
    eps[f] = -eps[f];
  }
  if (stats) stats->flips = flips;
  return eps;
}

std::vector<int> solve_bang(const BangInstance& inst, FlipAscentStats* stats) {
  inst.validate();
  return flip_ascent(inst.m, inst.gamma, inst.theta, stats);
}

RatVec bang_margins(const BangInstance& inst, const std::vector<int>& eps) {
  const std::size_t k = inst.gamma.size();
  if (eps.size() != k) throw std::invalid_argument("bang_margins: size mismatch");
  RatVec out(k);
  for (std::size_t i = 0; i < k; ++i) {
    Rat acc;
    for (std::size_t j = 0; j < k; ++j) acc += inst.m[i][j] * Rat(eps[j]);
    out[i] = abs(inst.theta * acc - inst.gamma[i]);
  }
  return out;
}

bool verify_bang(const BangInstance& inst, const std::vector<int>& eps) {
  for (const Rat& margin : bang_margins(inst, eps))
    if (margin < inst.theta) return false;
  return true;
}

}  // namespace cubecover
