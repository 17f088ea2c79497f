#include "cubecover/cube.hpp"

namespace cubecover {

std::uint64_t cube_size(int n, int guard) {
  if (n < 1) throw std::invalid_argument("cube: dimension must be >= 1");
  if (n > guard) throw std::invalid_argument("cube: dimension exceeds enumeration guard");
  return std::uint64_t{1} << n;
}

Vertex vertex_from_index(int n, std::uint64_t index) {
  Vertex v;
  v.n = n;
  v.signs.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    bool bit = (index >> (n - 1 - j)) & 1u;
    v.signs[static_cast<std::size_t>(j)] = bit ? std::int8_t{1} : std::int8_t{-1};
  }
  return v;
}

std::uint64_t index_of_vertex(const Vertex& v) {
  std::uint64_t idx = 0;
  for (int j = 0; j < v.n; ++j) {
    idx <<= 1;
    if (v.signs[static_cast<std::size_t>(j)] > 0) idx |= 1u;
  }
  return idx;
}

void enumerate_cube(int n, const std::function<void(const Vertex&)>& fn, int guard) {
  std::uint64_t total = cube_size(n, guard);
  Vertex v = vertex_from_index(n, 0);
  fn(v);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    // advance in place: binary increment over the sign pattern
    int j = n - 1;
    while (v.signs[static_cast<std::size_t>(j)] > 0) {
      v.signs[static_cast<std::size_t>(j)] = -1;
      --j;
    }
    v.signs[static_cast<std::size_t>(j)] = 1;
    fn(v);
  }
}

}  // namespace cubecover
