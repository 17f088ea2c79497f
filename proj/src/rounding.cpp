#include "cubecover/rounding.hpp"

#include <stdexcept>

#include "cubecover/linalg.hpp"

namespace cubecover {

RoundedPoint round_preserving(const RatMat& rows, const RatVec& z) {
  const std::size_t dim = z.size();
  for (const RatVec& r : rows)
    if (r.size() != dim) throw std::invalid_argument("round_preserving: row dimension mismatch");
  if (rows.size() >= dim)
    throw std::invalid_argument("round_preserving: need fewer rows than dimensions");
  const Rat one(1);
  for (const Rat& x : z)
    if (abs(x) > one) throw std::invalid_argument("round_preserving: ||z||_inf must be <= 1");

  RoundedPoint out;
  out.w = z;
  std::vector<int> fractional;
  for (std::size_t j = 0; j < dim; ++j)
    if (abs(out.w[j]) != one) fractional.push_back(static_cast<int>(j));

  while (fractional.size() > rows.size()) {
    auto dir = nullspace_vector(rows, fractional, static_cast<int>(dim));
    if (!dir) throw std::logic_error("round_preserving: no null direction despite slack");

    // smallest t > 0 at which some fractional coordinate saturates; the
    // direction is non-zero on the fractional set and the cube is bounded,
    // so such a t exists
    Rat best_t(-1);
    for (int j : fractional) {
      const Rat& dj = (*dir)[static_cast<std::size_t>(j)];
      if (dj.is_zero()) continue;
      Rat t = dj.sign() > 0 ? (one - out.w[static_cast<std::size_t>(j)]) / dj
                            : (-one - out.w[static_cast<std::size_t>(j)]) / dj;
      if (best_t.sign() < 0 || t < best_t) best_t = t;
    }
    if (best_t.sign() < 0) throw std::logic_error("round_preserving: direction vanished");

    for (int j : fractional)
      out.w[static_cast<std::size_t>(j)] += best_t * (*dir)[static_cast<std::size_t>(j)];

    std::vector<int> still;
    for (int j : fractional)
      if (abs(out.w[static_cast<std::size_t>(j)]) != one) still.push_back(j);
    if (still.size() == fractional.size())
      throw std::logic_error("round_preserving: no coordinate froze");
    fractional = std::move(still);
  }
  out.fractional_coords = fractional;
  return out;
}

std::vector<std::int8_t> sample_rounding(const RatVec& w, SplitMix64& rng) {
  const Rat one(1), two(2);
  std::vector<std::int8_t> x(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (abs(w[j]) > one) throw std::invalid_argument("sample_rounding: ||w||_inf must be <= 1");
    Rat p_plus = (one + w[j]) / two;
    x[j] = bernoulli(rng, p_plus) ? std::int8_t{1} : std::int8_t{-1};
  }
  return x;
}

Vertex sample_rounding_vertex(const RatVec& w, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vertex v;
  v.n = static_cast<int>(w.size());
  v.signs = sample_rounding(w, rng);
  return v;
}

}  // namespace cubecover
