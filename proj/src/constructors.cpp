#include "cubecover/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cubecover/linalg.hpp"
#include "cubecover/verifier.hpp"

namespace cubecover {

Cover degenerate_cover(int n) {
  if (n < 1) throw std::invalid_argument("degenerate_cover: n must be >= 1");
  Cover c;
  c.n = n;
  for (int sign : {1, -1}) {
    Hyperplane h;
    h.normal.assign(static_cast<std::size_t>(n), Rat(0));
    h.normal[0] = Rat(1);
    h.offset = Rat(sign);
    c.planes.push_back(std::move(h));
  }
  return c;
}

double lr_lower_bound(int n) {
  if (n < 1) throw std::invalid_argument("lr_lower_bound: n must be >= 1");
  return 0.5 * (std::sqrt(4.0 * n + 1.0) + 1.0);
}

AsymptoticBound yy_lower_bound(int n, const ParamSet& p) {
  if (n < 1) throw std::invalid_argument("yy_lower_bound: n must be >= 1");
  AsymptoticBound b;
  b.value = std::pow(static_cast<double>(n), p.alpha.to_double()) / p.divisor.to_double();
  b.asymptotic = true;
  return b;
}

namespace {

RatVec vertex_point(const Vertex& v) {
  RatVec p(static_cast<std::size_t>(v.n));
  for (int j = 0; j < v.n; ++j) p[static_cast<std::size_t>(j)] = Rat(v.signs[static_cast<std::size_t>(j)]);
  return p;
}

// Primitive integer form, first non-zero entry positive.
RatVec canonical_normal(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v) {
    Int d = x.den(), g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  std::vector<Int> ints;
  ints.reserve(v.size());
  Int g = 0;
  for (const Rat& x : v) {
    Int e = x.num() * (l / x.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    ints.push_back(e);
  }
  if (g == 0) g = 1;
  int lead = 0;
  for (const Int& e : ints)
    if (e != 0) {
      lead = sgn(e);
      break;
    }
  if (lead < 0) g = -g;
  RatVec out;
  out.reserve(v.size());
  for (const Int& e : ints) out.emplace_back(Int(e / g));
  return out;
}

}  // namespace

Hyperplane plane_from_normal_basis(const RatMat& basis, const RatVec& point) {
  if (basis.empty()) throw std::invalid_argument("plane_from_normal_basis: empty basis");
  std::size_t dim = basis[0].size();
  RatVec best;
  int best_support = -1;
  if (basis.size() == 1) {
    best = basis[0];
  } else {
    // Generic combination sum lambda^i b_i; each coordinate vanishes for at
    // most |basis|-1 lambdas, so scanning a few more than (r-1)*dim lambdas
    // reaches the maximum support.
    int r = static_cast<int>(basis.size());
    int tries = (r - 1) * static_cast<int>(dim) + 1;
    for (int lambda = 1; lambda <= tries; ++lambda) {
      RatVec cand(dim, Rat(0));
      Rat coeff(1);
      for (const RatVec& b : basis) {
        for (std::size_t j = 0; j < dim; ++j) cand[j] += coeff * b[j];
        coeff *= Rat(lambda);
      }
      int s = sparsity(cand);
      if (s > best_support) {
        best_support = s;
        best = cand;
      }
    }
  }
  Hyperplane h;
  h.normal = canonical_normal(best);
  h.offset = dot(h.normal, point);
  h.validate();
  return h;
}

std::vector<CoplanarAtom> enumerate_coplanar_atoms(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_coplanar_atoms: n must be in 1..4");
  std::uint64_t total = cube_size(n);
  std::vector<Vertex> verts;
  verts.reserve(total);
  std::vector<RatMat::value_type> points;
  for (std::uint64_t i = 0; i < total; ++i) {
    verts.push_back(vertex_from_index(n, i));
    points.push_back(vertex_point(verts.back()));
  }

  std::map<std::vector<std::uint32_t>, CoplanarAtom> atoms;

  // every maximal atom is spanned by n affinely independent vertices, so
  // scanning all n-subsets and closing them finds each one
  std::vector<std::uint32_t> pick(static_cast<std::size_t>(n));
  auto handle_subset = [&]() {
    RatMat chosen;
    for (std::uint32_t idx : pick) chosen.push_back(points[idx]);
    if (affine_rank(chosen) != n - 1) return;

    RatMat dirs;
    for (std::size_t i = 1; i < chosen.size(); ++i) {
      RatVec d(chosen[i].size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = chosen[i][j] - chosen[0][j];
      dirs.push_back(std::move(d));
    }
    RatMat basis = nullspace_basis(dirs, n);
    Hyperplane plane = plane_from_normal_basis(basis, chosen[0]);

    std::vector<std::uint32_t> closure;
    for (std::uint32_t i = 0; i < total; ++i)
      if (evaluate(plane, verts[i]).is_zero()) closure.push_back(i);

    if (atoms.count(closure)) return;
    CoplanarAtom a;
    a.vertex_indices = closure;
    a.affine_dim = n - 1;
    a.normal_space_basis = basis;
    a.plane = plane;
    atoms.emplace(std::move(closure), std::move(a));
  };

  // iterate n-subsets of [0, total)
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) pick[i] = static_cast<std::uint32_t>(i);
  while (true) {
    handle_subset();
    int pos = n - 1;
    while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == total - static_cast<std::uint64_t>(n - pos))
      --pos;
    if (pos < 0) break;
    ++pick[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < n; ++q)
      pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
  }

  std::vector<CoplanarAtom> out;
  out.reserve(atoms.size());
  for (auto& [key, atom] : atoms) out.push_back(std::move(atom));
  return out;
}

namespace {

struct OracleSearch {
  int n;
  std::uint32_t full_mask;
  const std::vector<CoplanarAtom>* atoms;
  std::vector<std::uint32_t> atom_masks;
  std::size_t max_atom_size = 0;
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;
  std::vector<int> chosen;
  std::vector<int>* solution = nullptr;

  bool privates_alive() const {
    // count per-vertex coverage among chosen; every chosen atom must still
    // cover some vertex no one else does (privateness only shrinks)
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      std::uint32_t others = 0;
      for (std::size_t b = 0; b < chosen.size(); ++b)
        if (b != a) others |= atom_masks[static_cast<std::size_t>(chosen[b])];
      if ((atom_masks[static_cast<std::size_t>(chosen[a])] & ~others) == 0) return false;
    }
    return true;
  }

  bool dfs(std::uint32_t covered, int depth_left) {
    if (++nodes > budget) throw SearchBudgetExceeded("oracle: node budget exceeded");
    if (covered == full_mask) {
      // conditions on variables and private vertices checked by the
      // authoritative verifier at the leaf
      Cover c;
      c.n = n;
      for (int idx : chosen) c.planes.push_back((*atoms)[static_cast<std::size_t>(idx)].plane);
      EssentialityReport rep = check_essential(c);
      if (rep.essential()) {
        *solution = chosen;
        return true;
      }
      return false;
    }
    if (depth_left == 0) return false;
    std::uint64_t uncovered = static_cast<std::uint64_t>(__builtin_popcount(full_mask & ~covered));
    if (uncovered > static_cast<std::uint64_t>(depth_left) * max_atom_size) return false;

    int branch_vertex = __builtin_ctz(full_mask & ~covered);
    for (std::size_t a = 0; a < atom_masks.size(); ++a) {
      if (!((atom_masks[a] >> branch_vertex) & 1u)) continue;
      chosen.push_back(static_cast<int>(a));
      if (privates_alive() && dfs(covered | atom_masks[a], depth_left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  }
};

}  // namespace

OracleResult minimum_essential_cover_size(int n, std::uint64_t node_budget) {
  std::vector<CoplanarAtom> atoms = enumerate_coplanar_atoms(n);
  // larger atoms first; ties resolved by vertex set for determinism
  std::sort(atoms.begin(), atoms.end(), [](const CoplanarAtom& a, const CoplanarAtom& b) {
    if (a.vertex_indices.size() != b.vertex_indices.size())
      return a.vertex_indices.size() > b.vertex_indices.size();
    return a.vertex_indices < b.vertex_indices;
  });

  OracleSearch s;
  s.n = n;
  s.full_mask = static_cast<std::uint32_t>((std::uint64_t{1} << cube_size(n)) - 1);
  s.atoms = &atoms;
  s.budget = node_budget;
  for (const CoplanarAtom& a : atoms) {
    std::uint32_t mask = 0;
    for (std::uint32_t v : a.vertex_indices) mask |= (std::uint32_t{1} << v);
    s.atom_masks.push_back(mask);
    s.max_atom_size = std::max(s.max_atom_size, a.vertex_indices.size());
  }

  std::vector<int> solution;
  s.solution = &solution;
  for (int size = 1; size <= n + 2; ++size) {
    s.chosen.clear();
    if (s.dfs(0, size)) {
      OracleResult r;
      r.e = size;
      r.witness.n = n;
      for (int idx : solution) r.witness.planes.push_back(atoms[static_cast<std::size_t>(idx)].plane);
      r.nodes_visited = s.nodes;
      return r;
    }
  }
  throw SearchBudgetExceeded("oracle: no essential cover found within size cap");
}

}  // namespace cubecover
