#include "cubecover/decomposition.hpp"

#include <algorithm>

#include "cubecover/powers.hpp"

namespace cubecover {

void CheckReport::add(const std::string& name, bool ok, const std::string& note) {
  CheckItem* item = nullptr;
  for (CheckItem& it : items)
    if (it.name == name) item = &it;
  if (!item) {
    items.push_back(CheckItem{name, true, {}});
    item = &items.back();
  }
  if (!ok) {
    item->pass = false;
    pass = false;
    if (!note.empty()) item->notes.push_back(note);
  }
}

const CheckItem* CheckReport::find(const std::string& name) const {
  for (const CheckItem& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

namespace {

Rat tau_from_c0(const Rat& c0) {
  // (1 - tau) / tau = c0^2
  return Rat(1) / (Rat(1) + square(c0));
}

struct RowState {
  Rat window_base;  // squared norm at the last renormalization, original units
  Rat residual;     // current squared norm inside M1, original units
  int drops = 0;
  bool evicted = false;
  bool above_tau = true;                        // residual/window_base >= tau
  std::vector<int> current_chunk;               // columns removed this window
  std::vector<std::vector<int>> closed_chunks;  // one per drop
};

}  // namespace

TwoWayDecomposition decompose_two_way(const RatMat& v, const ParamSet& p, int ambient_n) {
  std::vector<int> rows(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) rows[i] = static_cast<int>(i);
  int cols_n = v.empty() ? 0 : static_cast<int>(v[0].size());
  std::vector<int> cols(static_cast<std::size_t>(cols_n));
  for (int j = 0; j < cols_n; ++j) cols[static_cast<std::size_t>(j)] = j;
  if (ambient_n < 0) ambient_n = cols_n;
  return decompose_two_way_sub(v, rows, cols, p, ambient_n);
}

TwoWayDecomposition decompose_two_way_sub(const RatMat& v, const std::vector<int>& rows,
                                          const std::vector<int>& cols, const ParamSet& p,
                                          int ambient_n) {
  p.validate();
  const Int n(ambient_n);
  if (ambient_n >= 1 && cmp_rat_vs_pow(Rat(static_cast<long>(rows.size())), n, p.alpha) > 0)
    throw PremiseError("two-way: row count exceeds n^alpha");

  const int s_count = p.scale_count(n);
  const Rat tau = tau_from_c0(p.c0);
  const Rat neg_pre = -p.col_mass_exp_pre;

  std::map<int, RowState> state;
  for (int i : rows) {
    RowState st;
    Rat m;
    for (int j : cols) m += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    st.window_base = m;
    st.residual = m;
    state.emplace(i, std::move(st));
  }

  std::vector<int> m1 = cols;  // stays sorted; columns only leave
  TwoWayDecomposition d;

  auto column_mass = [&](int j) {
    Rat acc;
    for (int i : rows) {
      const RowState& st = state.at(i);
      if (st.evicted || st.window_base.is_zero()) continue;
      const Rat& e = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (e.is_zero()) continue;
      acc += square(e) / st.window_base;
    }
    return acc;
  };

  while (true) {
    int pick = -1;
    for (int j : m1) {
      Rat cm = column_mass(j);
      if (ambient_n >= 1 && cmp_rat_vs_pow(cm, n, neg_pre) >= 0) {
        pick = j;
        break;  // lowest index first
      }
    }
    if (pick < 0) break;

    m1.erase(std::find(m1.begin(), m1.end(), pick));
    d.m2.push_back(pick);

    for (int i : rows) {
      RowState& st = state.at(i);
      if (st.evicted || st.window_base.is_zero()) continue;
      const Rat& e = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick)];
      if (e.is_zero()) continue;
      st.residual -= square(e);
      st.current_chunk.push_back(pick);
      if (st.above_tau && st.residual < tau * st.window_base) {
        st.above_tau = false;
        st.drops += 1;
        st.closed_chunks.push_back(st.current_chunk);
        st.current_chunk.clear();
        if (st.drops > s_count) {
          st.evicted = true;
        } else if (!st.residual.is_zero()) {
          st.window_base = st.residual;
          st.above_tau = true;
        }
      }
    }
  }

  d.m1 = m1;
  d.move_count = d.m2.size();
  for (int i : rows) {
    const RowState& st = state.at(i);
    d.drops[i] = st.drops;
    if (!st.evicted) {
      d.l1.push_back(i);
      d.row_mass[i] = st.residual;
      continue;
    }
    d.l2.push_back(i);
    // groups: the first S-1 closed chunks, then everything else; the chunk
    // masses decay by c0 between consecutive windows by the choice of tau
    std::vector<std::vector<int>> groups;
    for (int g = 0; g + 1 < s_count; ++g) groups.push_back(st.closed_chunks[static_cast<std::size_t>(g)]);
    std::vector<bool> used(v[0].size(), false);
    for (const auto& g : groups)
      for (int j : g) used[static_cast<std::size_t>(j)] = true;
    std::vector<int> rest;
    for (int j : cols)
      if (!used[static_cast<std::size_t>(j)]) rest.push_back(j);
    groups.push_back(std::move(rest));

    ScalePartition part;
    part.groups = std::move(groups);
    for (auto& g : part.groups) std::sort(g.begin(), g.end());
    for (const auto& g : part.groups) {
      Rat m;
      for (int j : g) m += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      part.group_mass.push_back(m);
    }
    d.l2_scales.emplace(i, std::move(part));
  }

  // termination accounting: every move extracts at least the trigger mass,
  // and each row contributes less than S+2 windows of unit mass
  if (ambient_n >= 1 && !rows.empty() && d.move_count > 0) {
    Rat ratio = Rat(static_cast<long>(d.move_count)) /
                Rat(static_cast<long>((s_count + 2) * rows.size()));
    if (cmp_rat_vs_pow(ratio, n, p.col_mass_exp_pre) > 0)
      throw std::logic_error("two-way: move count exceeds the mass budget");
  }
  return d;
}

CheckReport check_two_way(const RatMat& v, const std::vector<int>& rows,
                          const std::vector<int>& cols, const TwoWayDecomposition& d,
                          const ParamSet& p, int ambient_n) {
  CheckReport rep;
  const Int n(ambient_n);
  const int s_count = p.scale_count(n);

  // exact partitions of the given rows and columns
  {
    std::vector<int> ru = d.l1, cu = d.m1;
    ru.insert(ru.end(), d.l2.begin(), d.l2.end());
    cu.insert(cu.end(), d.m2.begin(), d.m2.end());
    std::sort(ru.begin(), ru.end());
    std::sort(cu.begin(), cu.end());
    std::vector<int> rs = rows, cs = cols;
    std::sort(rs.begin(), rs.end());
    std::sort(cs.begin(), cs.end());
    rep.add("row_partition", ru == rs && std::adjacent_find(ru.begin(), ru.end()) == ru.end());
    rep.add("column_partition", cu == cs && std::adjacent_find(cu.begin(), cu.end()) == cu.end());
  }

  rep.add("m2_budget",
          cmp_rat_vs_pow(Rat(static_cast<long>(d.m2.size())), n, p.m2_exp) <= 0,
          "|M2| exceeds n^m2_exp");

  // final-normalization column masses, recomputed from scratch
  const Rat neg_final = -p.col_mass_exp;
  std::map<int, Rat> final_mass;
  for (int i : d.l1) {
    Rat m;
    for (int jj : d.m1) m += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]);
    final_mass[i] = m;
  }
  bool masses_ok = true;
  for (int j : d.m1) {
    Rat cm;
    for (int i : d.l1) {
      const Rat& m = final_mass.at(i);
      if (m.is_zero()) continue;
      cm += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) / m;
    }
    if (cmp_rat_vs_pow(cm, n, neg_final) >= 0) {
      masses_ok = false;
      rep.add("column_mass", false, "column " + std::to_string(j) + " too heavy");
    }
  }
  if (masses_ok) rep.add("column_mass", true);

  for (int i : d.l2) {
    auto it = d.l2_scales.find(i);
    if (it == d.l2_scales.end()) {
      rep.add("l2_scales", false, "row " + std::to_string(i) + " missing evidence");
      continue;
    }
    RatVec masked(v[static_cast<std::size_t>(i)].size(), Rat(0));
    for (int j : cols)
      masked[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    std::string why;
    bool ok = validate_scale_partition(masked, it->second, s_count, p.c0, &why);
    rep.add("l2_scales", ok, ok ? "" : "row " + std::to_string(i) + ": " + why);
    // the smallest scale position must contain every kept column
    std::vector<int> last = it->second.smallest_scale_coords();
    std::sort(last.begin(), last.end());
    for (int j : d.m1)
      if (!std::binary_search(last.begin(), last.end(), j))
        rep.add("l2_scale_position", false,
                "row " + std::to_string(i) + ": column " + std::to_string(j) + " outside");
  }
  rep.add("l2_scales", true);
  rep.add("l2_scale_position", true);
  return rep;
}

RatMat cover_matrix(const std::vector<RatVec>& normals) { return normals; }

FourWayDecomposition decompose_four_way(const RatMat& v, int n, const ParamSet& p) {
  p.validate();
  const Int nn(n);
  const int k = static_cast<int>(v.size());
  if (cmp_rat_vs_pow(Rat(k) * p.divisor, nn, p.alpha) > 0)
    throw PremiseError("four-way: row count exceeds n^alpha / divisor");

  // drop dense columns first so every kept column is sparse
  std::vector<int> current_cols;
  for (int j = 0; j < n; ++j) {
    int nnz = 0;
    for (int i = 0; i < k; ++i)
      if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) ++nnz;
    if (cmp_rat_vs_pow(Rat(nnz), nn, p.sparsity_exp) <= 0) current_cols.push_back(j);
  }
  std::vector<int> current_rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) current_rows[static_cast<std::size_t>(i)] = i;

  FourWayDecomposition d;
  while (true) {
    TwoWayDecomposition two = decompose_two_way_sub(v, current_rows, current_cols, p, n);

    std::vector<int> z;
    for (int i : current_rows) {
      bool zero = true;
      for (int j : two.m1)
        if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
          zero = false;
          break;
        }
      if (zero) z.push_back(i);
    }
    const std::size_t kt = z.size();
    const std::size_t nt = two.m2.size();

    bool cond1 = false;
    if (nt == 0)
      cond1 = kt > 0;
    else
      cond1 = cmp_rat_vs_pow(Rat(static_cast<long>(kt)), Int(static_cast<long>(nt)), p.cond1_exp) > 0;

    int excise = -1;
    if (!cond1) {
      Rat cap = p.cond2_factor * Rat(static_cast<long>(kt)) * Rat(static_cast<long>(kt));
      for (int i : z) {
        int nnz = 0;
        for (int j : two.m2)
          if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) ++nnz;
        if (Rat(nnz) <= cap) {
          excise = i;
          break;
        }
      }
    }

    FourWayDecomposition::IterationLog log;
    log.z_size = kt;
    log.m2_size = nt;
    log.cols_before = current_cols.size();

    if (cond1) {
      log.branch = "rows_pruned";
      log.removed_rows = z;
      d.iterations.push_back(std::move(log));
      std::vector<int> keep;
      for (int i : current_rows)
        if (std::find(z.begin(), z.end(), i) == z.end()) keep.push_back(i);
      current_rows = std::move(keep);
      current_cols = two.m1;
      continue;
    }
    if (excise >= 0) {
      log.branch = "row_excised";
      log.removed_rows = {excise};
      d.iterations.push_back(std::move(log));
      std::vector<int> keep;
      for (int i : current_rows)
        if (i != excise) keep.push_back(i);
      current_rows = std::move(keep);
      std::vector<int> zero_cols;
      for (int j : current_cols)
        if (v[static_cast<std::size_t>(excise)][static_cast<std::size_t>(j)].is_zero())
          zero_cols.push_back(j);
      current_cols = std::move(zero_cols);
      continue;
    }

    log.branch = "terminal";
    d.iterations.push_back(std::move(log));

    d.n1 = two.m1;
    d.n2 = two.m2;
    std::sort(d.n2.begin(), d.n2.end());
    std::vector<bool> in_c(static_cast<std::size_t>(n), false);
    for (int j : current_cols) in_c[static_cast<std::size_t>(j)] = true;
    for (int j = 0; j < n; ++j)
      if (!in_c[static_cast<std::size_t>(j)]) d.n3.push_back(j);

    d.k2 = z;
    auto not_in_z = [&](int i) { return std::find(z.begin(), z.end(), i) == z.end(); };
    for (int i : two.l1)
      if (not_in_z(i)) d.k3.push_back(i);
    for (int i : two.l2)
      if (not_in_z(i)) d.k4.push_back(i);
    std::vector<bool> in_r(static_cast<std::size_t>(k), false);
    for (int i : current_rows) in_r[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < k; ++i)
      if (!in_r[static_cast<std::size_t>(i)]) d.k1.push_back(i);

    for (int i : d.k3) {
      Rat m;
      for (int j : d.n1) m += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      d.phi_sq[i] = Rat(1) / m;  // K3 rows are non-zero on N1 by construction
    }
    for (int i : d.k4) d.k4_scales.emplace(i, two.l2_scales.at(i));
    d.empty_k3 = d.k3.empty();
    return d;
  }
}

CheckReport check_four_way(const RatMat& v, int n, const FourWayDecomposition& d,
                           const ParamSet& p) {
  CheckReport rep;
  const Int nn(n);
  const int k = static_cast<int>(v.size());
  const int s_count = p.scale_count(nn);

  {
    std::vector<int> rows;
    for (const auto* part : {&d.k1, &d.k2, &d.k3, &d.k4})
      rows.insert(rows.end(), part->begin(), part->end());
    std::sort(rows.begin(), rows.end());
    bool ok = static_cast<int>(rows.size()) == k &&
              std::adjacent_find(rows.begin(), rows.end()) == rows.end();
    for (int i : rows) ok = ok && i >= 0 && i < k;
    rep.add("row_partition", ok, "K1..K4 must partition the rows");

    std::vector<int> cols;
    for (const auto* part : {&d.n1, &d.n2, &d.n3})
      cols.insert(cols.end(), part->begin(), part->end());
    std::sort(cols.begin(), cols.end());
    ok = static_cast<int>(cols.size()) == n &&
         std::adjacent_find(cols.begin(), cols.end()) == cols.end();
    for (int j : cols) ok = ok && j >= 0 && j < n;
    rep.add("column_partition", ok, "N1..N3 must partition the columns");
  }

  rep.add("n1_size", 2 * static_cast<int>(d.n1.size()) >= n, "|N1| below n/2");

  {
    std::vector<int> sparse_cols = d.n1;
    sparse_cols.insert(sparse_cols.end(), d.n2.begin(), d.n2.end());
    bool ok = true;
    for (int j : sparse_cols) {
      int nnz = 0;
      for (int i = 0; i < k; ++i)
        if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) ++nnz;
      if (cmp_rat_vs_pow(Rat(nnz), nn, p.sparsity_exp) > 0) {
        ok = false;
        rep.add("item1_column_sparsity", false, "column " + std::to_string(j) + " too dense");
      }
    }
    if (ok) rep.add("item1_column_sparsity", true);
  }

  {
    bool ok = true;
    for (int i : d.k1)
      for (const auto* cols : {&d.n1, &d.n2})
        for (int j : *cols)
          if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
            ok = false;
            rep.add("item2_k1_zero", false,
                    "row " + std::to_string(i) + " non-zero at column " + std::to_string(j));
          }
    if (ok) rep.add("item2_k1_zero", true);
  }

  {
    bool ok = true;
    Rat need = p.cond2_factor * Rat(static_cast<long>(d.k2.size())) *
               Rat(static_cast<long>(d.k2.size()));
    for (int i : d.k2) {
      for (int j : d.n1)
        if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) {
          ok = false;
          rep.add("item3_k2", false, "row " + std::to_string(i) + " non-zero on N1");
        }
      int nnz = 0;
      for (int j : d.n2)
        if (!v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) ++nnz;
      if (Rat(nnz) < need) {
        ok = false;
        rep.add("item3_k2", false, "row " + std::to_string(i) + " too sparse on N2");
      }
    }
    if (ok) rep.add("item3_k2", true);
  }

  {
    bool ok = true;
    for (int i : d.k3) {
      Rat m;
      for (int j : d.n1) m += square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      auto it = d.phi_sq.find(i);
      if (m.is_zero() || it == d.phi_sq.end() || it->second.sign() <= 0 ||
          it->second * m != Rat(1)) {
        ok = false;
        rep.add("item4_phi", false, "row " + std::to_string(i) + ": normalizer mismatch");
      }
    }
    if (ok) rep.add("item4_phi", true);
  }

  {
    const Rat neg_final = -p.col_mass_exp;
    bool ok = true;
    for (int j : d.n1) {
      Rat cm;
      for (int i : d.k3) {
        auto it = d.phi_sq.find(i);
        if (it == d.phi_sq.end()) continue;
        cm += it->second * square(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      }
      if (cmp_rat_vs_pow(cm, nn, neg_final) >= 0) {
        ok = false;
        rep.add("item4_col_mass", false, "column " + std::to_string(j) + " too heavy");
      }
    }
    if (ok) rep.add("item4_col_mass", true);
  }

  {
    // sum of |phi_i v_ij| against n^((sparsity_exp - col_mass_exp)/2),
    // decided by directed rational bounds, conservatively
    Rat expo = (p.sparsity_exp - p.col_mass_exp) / Rat(2);
    bool ok = true;
    for (int j : d.n1) {
      bool decided = false;
      for (unsigned bits : {64u, 256u, 1024u}) {
        Rat lhs_up;
        for (int i : d.k3) {
          auto it = d.phi_sq.find(i);
          if (it == d.phi_sq.end()) continue;
          const Rat& e = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          if (e.is_zero()) continue;
          lhs_up += abs(e) * sqrt_bound(it->second, Round::Up, bits);
        }
        Rat rhs_low = expo.sign() >= 0 ? pow_bound(nn, expo, Round::Down, bits)
                                       : Rat(1) / pow_bound(nn, -expo, Round::Up, bits);
        if (lhs_up < rhs_low) {
          decided = true;
          break;
        }
      }
      if (!decided) {
        ok = false;
        rep.add("item4_linf", false, "column " + std::to_string(j) + " sum not below threshold");
      }
    }
    if (ok) rep.add("item4_linf", true);
  }

  {
    bool ok = true;
    std::vector<int> n12 = d.n1;
    n12.insert(n12.end(), d.n2.begin(), d.n2.end());
    for (int i : d.k4) {
      auto it = d.k4_scales.find(i);
      if (it == d.k4_scales.end()) {
        ok = false;
        rep.add("item5_k4_scales", false, "row " + std::to_string(i) + " missing evidence");
        continue;
      }
      RatVec masked(v[static_cast<std::size_t>(i)].size(), Rat(0));
      for (int j : n12)
        masked[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      std::string why;
      if (!validate_scale_partition(masked, it->second, s_count, p.c0, &why)) {
        ok = false;
        rep.add("item5_k4_scales", false, "row " + std::to_string(i) + ": " + why);
        continue;
      }
      std::vector<int> last = it->second.smallest_scale_coords();
      std::sort(last.begin(), last.end());
      for (int j : d.n1)
        if (!std::binary_search(last.begin(), last.end(), j)) {
          ok = false;
          rep.add("item5_k4_scales", false,
                  "row " + std::to_string(i) + ": smallest scale misses column " + std::to_string(j));
        }
    }
    if (ok) rep.add("item5_k4_scales", true);
  }

  if (d.empty_k3 != d.k3.empty())
    rep.add("flags", false, "empty_k3 flag inconsistent");
  else
    rep.add("flags", true);
  return rep;
}

}  // namespace cubecover
