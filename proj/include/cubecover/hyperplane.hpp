#pragma once

#include <cstdint>
#include <optional>

#include "cubecover/cube.hpp"
#include "cubecover/rat.hpp"

namespace cubecover {

/// A hyperplane { z : <z, normal> = offset }. The normal must have at
/// least one non-zero entry.
struct Hyperplane {
  RatVec normal;
  Rat offset;

  int dimension() const { return static_cast<int>(normal.size()); }
  void validate() const;
};

/// An ordered list of hyperplanes over a common dimension, k >= 1.
struct Cover {
  int n = 0;
  std::vector<Hyperplane> planes;

  int k() const { return static_cast<int>(planes.size()); }
  void validate() const;
};

/// Exact evaluation <x, normal> - offset; zero iff x lies on the plane.
Rat evaluate(const Hyperplane& h, const Vertex& x);

/// int64 evaluation kernel for covers whose entries are all integers with
/// safely bounded magnitude. Exhaustive scans use it when applicable; the
/// rational path is the reference.
class FastEvaluator {
 public:
  explicit FastEvaluator(const Cover& c);

  bool usable() const { return usable_; }
  /// True iff some plane evaluates to zero at the vertex.
  bool covered(const Vertex& x) const;
  /// True iff plane i evaluates to zero at the vertex.
  bool on_plane(int i, const Vertex& x) const;

 private:
  bool usable_ = false;
  std::vector<std::vector<std::int64_t>> normals_;
  std::vector<std::int64_t> offsets_;
};

}  // namespace cubecover
