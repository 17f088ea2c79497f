#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubecover/params.hpp"
#include "cubecover/rat.hpp"
#include "cubecover/scales.hpp"

namespace cubecover {

struct PremiseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckItem {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
};

struct CheckReport {
  bool pass = true;
  std::vector<CheckItem> items;

  void add(const std::string& name, bool ok, const std::string& note = "");
  const CheckItem* find(const std::string& name) const;
};

/// Output of the row/column mass loop. Row and column index sets refer to
/// the input matrix; rows in l2 carry the scale partition earned by their
/// drop history as checkable evidence.
struct TwoWayDecomposition {
  std::vector<int> l1, l2;
  std::vector<int> m1, m2;  // m2 in move order
  std::map<int, Rat> row_mass;              // final squared norm on M1 per L1 row
  std::map<int, ScalePartition> l2_scales;  // groups indexed by input columns
  std::map<int, int> drops;
  std::size_t move_count = 0;
};

/// The mass loop: repeatedly move the lowest-index column whose mass under
/// the current row normalization reaches n^-col_mass_exp_pre, marking a
/// drop whenever a row's residual mass falls below tau with
/// (1-tau)/tau = c0^2, renormalizing surviving rows and evicting a row
/// after its drop count exceeds S. All comparisons are exact.
/// Premise: k <= ambient_n^alpha.
TwoWayDecomposition decompose_two_way(const RatMat& v, const ParamSet& p, int ambient_n = -1);

/// Same loop on a row/column submatrix, thresholds taken at ambient_n.
TwoWayDecomposition decompose_two_way_sub(const RatMat& v, const std::vector<int>& rows,
                                          const std::vector<int>& cols, const ParamSet& p,
                                          int ambient_n);

/// Independent validation of a two-way decomposition; recomputes every
/// quantity from the matrix and never consults the construction state.
CheckReport check_two_way(const RatMat& v, const std::vector<int>& rows,
                          const std::vector<int>& cols, const TwoWayDecomposition& d,
                          const ParamSet& p, int ambient_n);

/// Four-part row and three-part column split assembled from the nested
/// two-way decompositions:
///   K1 rows vanish on N1 and N2; K2 rows vanish on N1 and are dense on N2;
///   K3 rows are non-zero on N1 with small normalized column masses there;
///   K4 rows have many scales on N1+N2 with the smallest scale over N1.
struct FourWayDecomposition {
  std::vector<int> k1, k2, k3, k4;
  std::vector<int> n1, n2, n3;
  std::map<int, Rat> phi_sq;                // K3: exact 1 / ||v_i|N1||^2
  std::map<int, ScalePartition> k4_scales;  // evidence over N1 + N2
  struct IterationLog {
    std::string branch;  // "rows_pruned" | "row_excised" | "terminal"
    std::vector<int> removed_rows;
    std::size_t z_size = 0;
    std::size_t m2_size = 0;
    std::size_t cols_before = 0;
  };
  std::vector<IterationLog> iterations;
  bool empty_k3 = false;
};

/// Premise: k <= n^alpha / divisor (throws PremiseError otherwise).
FourWayDecomposition decompose_four_way(const RatMat& v, int n, const ParamSet& p);

/// Independent checker for every structural and quantitative condition of
/// the four-way decomposition. Shares no classification code with the
/// constructor; carried scale partitions are validated as certificates.
CheckReport check_four_way(const RatMat& v, int n, const FourWayDecomposition& d,
                           const ParamSet& p);

/// Rows of a cover's normals as a matrix (the decomposition input).
RatMat cover_matrix(const std::vector<RatVec>& normals);

}  // namespace cubecover
