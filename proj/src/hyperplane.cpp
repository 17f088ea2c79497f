#include "cubecover/hyperplane.hpp"

#include <limits>
#include <stdexcept>

namespace cubecover {

void Hyperplane::validate() const {
  if (normal.empty()) throw std::invalid_argument("hyperplane: empty normal");
  if (sparsity(normal) == 0) throw std::invalid_argument("hyperplane: zero normal");
}

void Cover::validate() const {
  if (n < 1) throw std::invalid_argument("cover: dimension must be >= 1");
  if (planes.empty()) throw std::invalid_argument("cover: needs at least one plane");
  for (const Hyperplane& h : planes) {
    h.validate();
    if (h.dimension() != n) throw std::invalid_argument("cover: plane dimension mismatch");
  }
}

Rat evaluate(const Hyperplane& h, const Vertex& x) {
  if (h.dimension() != x.n) throw std::invalid_argument("evaluate: dimension mismatch");
  Rat acc;
  for (int j = 0; j < x.n; ++j) {
    const Rat& vj = h.normal[static_cast<std::size_t>(j)];
    if (vj.is_zero()) continue;
    if (x.signs[static_cast<std::size_t>(j)] > 0)
      acc += vj;
    else
      acc -= vj;
  }
  return acc - h.offset;
}

FastEvaluator::FastEvaluator(const Cover& c) {
  // All entries must be integers and the per-plane |sum| bound must fit
  // comfortably in int64.
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 4;
  normals_.reserve(static_cast<std::size_t>(c.k()));
  offsets_.reserve(static_cast<std::size_t>(c.k()));
  for (const Hyperplane& h : c.planes) {
    std::vector<std::int64_t> row;
    row.reserve(static_cast<std::size_t>(c.n));
    std::int64_t abs_sum = 0;
    if (!h.offset.is_integer() || !h.offset.num().fits_slong_p()) return;
    for (const Rat& v : h.normal) {
      if (!v.is_integer() || !v.num().fits_slong_p()) return;
      std::int64_t x = v.num().get_si();
      row.push_back(x);
      abs_sum += x < 0 ? -x : x;
      if (abs_sum > limit) return;
    }
    std::int64_t off = h.offset.num().get_si();
    if (off > limit || off < -limit) return;
    normals_.push_back(std::move(row));
    offsets_.push_back(off);
  }
  usable_ = true;
}

bool FastEvaluator::on_plane(int i, const Vertex& x) const {
  const auto& row = normals_[static_cast<std::size_t>(i)];
  std::int64_t acc = 0;
  for (int j = 0; j < x.n; ++j) {
    std::int64_t v = row[static_cast<std::size_t>(j)];
    acc += x.signs[static_cast<std::size_t>(j)] > 0 ? v : -v;
  }
  return acc == offsets_[static_cast<std::size_t>(i)];
}

bool FastEvaluator::covered(const Vertex& x) const {
  for (std::size_t i = 0; i < normals_.size(); ++i)
    if (on_plane(static_cast<int>(i), x)) return true;
  return false;
}

}  // namespace cubecover
