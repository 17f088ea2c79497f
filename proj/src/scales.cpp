#include "cubecover/scales.hpp"

#include <algorithm>
#include <numeric>

namespace cubecover {

namespace {

ScalePartition build_partition(const RatVec& v, const std::vector<std::vector<int>>& groups) {
  ScalePartition p;
  p.groups = groups;
  for (const auto& g : p.groups) {
    Rat m;
    for (int idx : g) m += square(v[static_cast<std::size_t>(idx)]);
    p.group_mass.push_back(m);
  }
  return p;
}

}  // namespace

bool validate_scale_partition(const RatVec& v, const ScalePartition& part, int s_count,
                              const Rat& c0, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(part.groups.size()) != s_count) return fail("wrong group count");
  if (part.group_mass.size() != part.groups.size()) return fail("mass list size mismatch");

  std::vector<int> seen(v.size(), 0);
  for (std::size_t s = 0; s < part.groups.size(); ++s) {
    Rat m;
    for (int idx : part.groups[s]) {
      if (idx < 0 || idx >= static_cast<int>(v.size())) return fail("index out of range");
      if (seen[static_cast<std::size_t>(idx)]++) return fail("groups overlap");
      m += square(v[static_cast<std::size_t>(idx)]);
    }
    if (m != part.group_mass[s]) return fail("stored mass is wrong");
    if (m.is_zero()) return fail("group with zero mass");
  }
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero() && !seen[j]) return fail("support coordinate not covered");

  Rat c0_sq = square(c0);
  for (std::size_t s = 0; s + 1 < part.group_mass.size(); ++s)
    if (part.group_mass[s] < c0_sq * part.group_mass[s + 1]) return fail("decay gap violated");
  return true;
}

namespace {

// Contiguous search over coordinates sorted by decreasing magnitude.
// min_prev[i][g] = least previous-group mass P so that coords[i..] split
// into g chained groups with first mass <= P / c0^2. Monotone in P, so the
// table decides feasibility exactly for contiguous splits.
std::optional<std::vector<std::vector<int>>> contiguous_split(const std::vector<int>& order,
                                                              const RatVec& v, int s_count,
                                                              const Rat& c0_sq) {
  int m = static_cast<int>(order.size());
  if (m < s_count) return std::nullopt;

  std::vector<Rat> prefix(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i < m; ++i)
    prefix[static_cast<std::size_t>(i) + 1] =
        prefix[static_cast<std::size_t>(i)] + square(v[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
  auto seg = [&](int a, int b) { return prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a)]; };

  const Rat infinity = seg(0, m) * c0_sq + Rat(1);
  // min_prev[g] computed for suffixes right to left; index by start position
  std::vector<std::vector<Rat>> min_prev(static_cast<std::size_t>(s_count) + 1,
                                         std::vector<Rat>(static_cast<std::size_t>(m) + 1, infinity));
  for (int i = 0; i < m; ++i) min_prev[1][static_cast<std::size_t>(i)] = c0_sq * seg(i, m);
  for (int g = 2; g <= s_count; ++g) {
    for (int i = 0; i + g <= m; ++i) {
      Rat best = infinity;
      for (int t = i + 1; t + (g - 1) <= m; ++t) {
        Rat first = seg(i, t);
        if (first >= min_prev[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(t)]) {
          Rat need = c0_sq * first;
          if (need < best) best = need;
        }
      }
      min_prev[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)] = best;
    }
  }

  // the first group has no predecessor constraint
  bool feasible = false;
  if (s_count == 1) {
    feasible = m >= 1;
  } else {
    for (int t = 1; t + (s_count - 1) <= m; ++t)
      if (seg(0, t) >= min_prev[static_cast<std::size_t>(s_count - 1)][static_cast<std::size_t>(t)]) {
        feasible = true;
        break;
      }
  }
  if (!feasible) return std::nullopt;

  // reconstruct: earliest feasible split point at every level
  std::vector<std::vector<int>> groups;
  int pos = 0;
  for (int g = s_count; g >= 1; --g) {
    if (g == 1) {
      groups.emplace_back(order.begin() + pos, order.end());
      break;
    }
    for (int t = pos + 1; t + (g - 1) <= m; ++t) {
      Rat first = seg(pos, t);
      bool chain_ok = first >= min_prev[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(t)];
      bool prev_ok = groups.empty() ||
                     seg(pos - static_cast<int>(groups.back().size()), pos) >= c0_sq * first;
      if (chain_ok && prev_ok) {
        groups.emplace_back(order.begin() + pos, order.begin() + t);
        pos = t;
        break;
      }
    }
  }
  if (static_cast<int>(groups.size()) != s_count) return std::nullopt;
  return groups;
}

// Exhaustive ordered-partition search on a small support.
bool exhaustive_assign(const std::vector<int>& order, const RatVec& v, int s_count,
                       const Rat& c0_sq, std::size_t pos, std::vector<Rat>& masses,
                       std::vector<std::vector<int>>& groups) {
  if (pos == order.size()) {
    for (const Rat& mres : masses)
      if (mres.is_zero()) return false;
    for (std::size_t s = 0; s + 1 < masses.size(); ++s)
      if (masses[s] < c0_sq * masses[s + 1]) return false;
    return true;
  }
  int idx = order[pos];
  Rat sq = square(v[static_cast<std::size_t>(idx)]);
  for (int g = 0; g < s_count; ++g) {
    masses[static_cast<std::size_t>(g)] += sq;
    groups[static_cast<std::size_t>(g)].push_back(idx);
    if (exhaustive_assign(order, v, s_count, c0_sq, pos + 1, masses, groups)) return true;
    masses[static_cast<std::size_t>(g)] -= sq;
    groups[static_cast<std::size_t>(g)].pop_back();
  }
  return false;
}

}  // namespace

std::optional<ScalePartition> find_scales(const RatVec& v, int s_count, const Rat& c0) {
  if (s_count < 1 || c0 <= Rat(1)) return std::nullopt;
  std::vector<int> support;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) support.push_back(static_cast<int>(j));
  if (static_cast<int>(support.size()) < s_count) return std::nullopt;

  std::vector<int> order = support;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Rat aa = abs(v[static_cast<std::size_t>(a)]), bb = abs(v[static_cast<std::size_t>(b)]);
    if (aa != bb) return aa > bb;
    return a < b;
  });

  Rat c0_sq = square(c0);
  auto groups = contiguous_split(order, v, s_count, c0_sq);
  if (!groups && support.size() <= 10) {
    std::vector<Rat> masses(static_cast<std::size_t>(s_count), Rat(0));
    std::vector<std::vector<int>> asg(static_cast<std::size_t>(s_count));
    if (exhaustive_assign(order, v, s_count, c0_sq, 0, masses, asg)) groups = asg;
  }
  if (!groups) return std::nullopt;

  // zero coordinates ride along with the smallest scale
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j].is_zero()) groups->back().push_back(static_cast<int>(j));
  for (auto& g : *groups) std::sort(g.begin(), g.end());
  return build_partition(v, *groups);
}

}  // namespace cubecover
