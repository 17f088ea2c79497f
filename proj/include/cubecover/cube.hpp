#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cubecover {

/// A hypercube vertex: every entry is exactly +1 or -1.
struct Vertex {
  int n = 0;
  std::vector<std::int8_t> signs;  // each +1 or -1

  bool operator==(const Vertex& o) const { return n == o.n && signs == o.signs; }
};

/// Guard for full 2^n enumerations. Callers may raise it explicitly.
inline constexpr int kDefaultEnumGuard = 30;

/// Enumeration order is fixed: lexicographic over sign patterns with
/// -1 < +1, index 0 the all-minus vertex, coordinate 0 the most
/// significant position.
Vertex vertex_from_index(int n, std::uint64_t index);
std::uint64_t index_of_vertex(const Vertex& v);

/// Calls fn for each of the 2^n vertices in index order. Throws if n
/// exceeds the guard.
void enumerate_cube(int n, const std::function<void(const Vertex&)>& fn,
                    int guard = kDefaultEnumGuard);

/// Number of vertices, throws if n exceeds the guard.
std::uint64_t cube_size(int n, int guard = kDefaultEnumGuard);

}  // namespace cubecover
