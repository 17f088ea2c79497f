#include "cubecover/linalg.hpp"

#include <stdexcept>

namespace cubecover {

namespace {

using IntMat = std::vector<std::vector<Int>>;

// Rows scaled to integers (scaling does not change span or null space).
IntMat clear_denominators(const RatMat& rows) {
  IntMat out;
  out.reserve(rows.size());
  for (const RatVec& row : rows) {
    Int l = 1;
    for (const Rat& x : row) {
      Int d = x.den();
      Int g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      l = l / g * d;
    }
    std::vector<Int> irow;
    irow.reserve(row.size());
    for (const Rat& x : row) irow.push_back(x.num() * (l / x.den()));
    out.push_back(std::move(irow));
  }
  return out;
}

struct Echelon {
  IntMat m;
  std::vector<int> pivot_cols;  // pivot_cols[r] = column of pivot row r
};

// Fraction-free (Bareiss) forward elimination with first-non-zero pivoting.
Echelon bareiss(IntMat a) {
  Echelon e;
  std::size_t nrows = a.size();
  std::size_t ncols = nrows ? a[0].size() : 0;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < nrows; ++col) {
    std::size_t pr = r;
    while (pr < nrows && a[pr][col] == 0) ++pr;
    if (pr == nrows) continue;
    std::swap(a[r], a[pr]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        Int t = a[i][j] * a[r][col] - a[i][col] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    e.pivot_cols.push_back(static_cast<int>(col));
    ++r;
  }
  e.m = std::move(a);
  return e;
}

// Null vector with free variable `free_col` set to one, solved by rational
// back-substitution over the echelon form.
RatVec back_substitute(const Echelon& e, std::size_t ncols, int free_col) {
  RatVec x(ncols, Rat(0));
  x[static_cast<std::size_t>(free_col)] = Rat(1);
  for (int r = static_cast<int>(e.pivot_cols.size()) - 1; r >= 0; --r) {
    int pc = e.pivot_cols[static_cast<std::size_t>(r)];
    Rat acc;
    const auto& row = e.m[static_cast<std::size_t>(r)];
    for (std::size_t j = static_cast<std::size_t>(pc) + 1; j < ncols; ++j) {
      if (row[j] == 0 || x[j].is_zero()) continue;
      acc += Rat(row[j]) * x[j];
    }
    x[static_cast<std::size_t>(pc)] = -acc / Rat(row[static_cast<std::size_t>(pc)]);
  }
  return x;
}

void normalize_leading_sign(RatVec& v) {
  for (const Rat& x : v) {
    if (x.is_zero()) continue;
    if (x.sign() < 0)
      for (Rat& y : v) y = -y;
    return;
  }
}

}  // namespace

int rank(const RatMat& rows) {
  if (rows.empty()) return 0;
  Echelon e = bareiss(clear_denominators(rows));
  return static_cast<int>(e.pivot_cols.size());
}

int affine_rank(const RatMat& points) {
  if (points.size() <= 1) return 0;
  RatMat diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVec d(points[i].size());
    for (std::size_t j = 0; j < points[i].size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return rank(diffs);
}

std::optional<RatVec> nullspace_vector(const RatMat& rows, const std::vector<int>& columns,
                                       int dimension) {
  std::size_t m = columns.size();
  RatMat sub;
  sub.reserve(rows.size());
  for (const RatVec& row : rows) {
    RatVec r;
    r.reserve(m);
    for (int c : columns) r.push_back(row[static_cast<std::size_t>(c)]);
    sub.push_back(std::move(r));
  }
  Echelon e = bareiss(clear_denominators(sub));
  if (e.pivot_cols.size() >= m) return std::nullopt;

  // first free column in increasing order
  int free_col = -1;
  std::size_t p = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (p < e.pivot_cols.size() && e.pivot_cols[p] == static_cast<int>(c)) {
      ++p;
      continue;
    }
    free_col = static_cast<int>(c);
    break;
  }
  RatVec local = back_substitute(e, m, free_col);
  normalize_leading_sign(local);
  RatVec full(static_cast<std::size_t>(dimension), Rat(0));
  for (std::size_t c = 0; c < m; ++c) full[static_cast<std::size_t>(columns[c])] = local[c];
  return full;
}

RatMat nullspace_basis(const RatMat& rows, int cols) {
  Echelon e = bareiss(clear_denominators(rows));
  RatMat basis;
  std::size_t p = 0;
  for (int c = 0; c < cols; ++c) {
    if (p < e.pivot_cols.size() && e.pivot_cols[p] == c) {
      ++p;
      continue;
    }
    RatVec v = back_substitute(e, static_cast<std::size_t>(cols), c);
    normalize_leading_sign(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cubecover
