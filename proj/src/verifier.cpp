#include "cubecover/verifier.hpp"

#include <limits>
#include <stdexcept>
#include <thread>

namespace cubecover {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Number of planes through x, stopping early at `cap` when cap > 0.
int count_covering(const Cover& c, const FastEvaluator& fast, const Vertex& x, int cap,
                   int* last_hit) {
  int hits = 0;
  for (int i = 0; i < c.k(); ++i) {
    bool on = fast.usable() ? fast.on_plane(i, x)
                            : evaluate(c.planes[static_cast<std::size_t>(i)], x).is_zero();
    if (on) {
      ++hits;
      if (last_hit) *last_hit = i;
      if (cap > 0 && hits >= cap) return hits;
    }
  }
  return hits;
}

struct ScanResult {
  std::uint64_t first_uncovered = kNone;
  std::vector<std::uint64_t> first_private;  // per plane
};

ScanResult scan_range(const Cover& c, const FastEvaluator& fast, std::uint64_t lo,
                      std::uint64_t hi) {
  ScanResult r;
  r.first_private.assign(static_cast<std::size_t>(c.k()), kNone);
  Vertex x = vertex_from_index(c.n, lo);
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (idx != lo) {
      int j = c.n - 1;
      while (x.signs[static_cast<std::size_t>(j)] > 0) {
        x.signs[static_cast<std::size_t>(j)] = -1;
        --j;
      }
      x.signs[static_cast<std::size_t>(j)] = 1;
    }
    int hit = -1;
    int hits = count_covering(c, fast, x, 2, &hit);
    if (hits == 0 && r.first_uncovered == kNone) r.first_uncovered = idx;
    if (hits == 1 && r.first_private[static_cast<std::size_t>(hit)] == kNone)
      r.first_private[static_cast<std::size_t>(hit)] = idx;
  }
  return r;
}

ScanResult scan_cube(const Cover& c, int guard, int threads) {
  std::uint64_t total = cube_size(c.n, guard);
  FastEvaluator fast(c);
  if (threads < 1) threads = 1;
  std::uint64_t want = static_cast<std::uint64_t>(threads);
  if (want > total) want = total;
  if (want <= 1) return scan_range(c, fast, 0, total);

  std::vector<ScanResult> parts(want);
  std::vector<std::thread> pool;
  std::uint64_t chunk = total / want;
  for (std::uint64_t t = 0; t < want; ++t) {
    std::uint64_t lo = t * chunk;
    std::uint64_t hi = (t + 1 == want) ? total : lo + chunk;
    pool.emplace_back([&, t, lo, hi] { parts[t] = scan_range(c, fast, lo, hi); });
  }
  for (auto& th : pool) th.join();

  // deterministic merge: first witness in enumeration order wins
  ScanResult merged;
  merged.first_private.assign(static_cast<std::size_t>(c.k()), kNone);
  for (const ScanResult& p : parts) {
    if (p.first_uncovered < merged.first_uncovered) merged.first_uncovered = p.first_uncovered;
    for (std::size_t i = 0; i < merged.first_private.size(); ++i)
      if (p.first_private[i] < merged.first_private[i]) merged.first_private[i] = p.first_private[i];
  }
  return merged;
}

}  // namespace

std::vector<Vertex> uncovered_vertices(const Cover& c, std::size_t limit, int guard,
                                       int threads) {
  c.validate();
  std::uint64_t total = cube_size(c.n, guard);
  FastEvaluator fast(c);
  if (threads < 1) threads = 1;
  std::uint64_t want = static_cast<std::uint64_t>(threads);
  if (want > total) want = total;

  std::vector<std::vector<std::uint64_t>> found(want);
  auto collect = [&](std::uint64_t slot, std::uint64_t lo, std::uint64_t hi) {
    Vertex x = vertex_from_index(c.n, lo);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx != lo) {
        int j = c.n - 1;
        while (x.signs[static_cast<std::size_t>(j)] > 0) {
          x.signs[static_cast<std::size_t>(j)] = -1;
          --j;
        }
        x.signs[static_cast<std::size_t>(j)] = 1;
      }
      bool covered = fast.usable() ? fast.covered(x) : count_covering(c, fast, x, 1, nullptr) > 0;
      if (!covered) {
        found[slot].push_back(idx);
        if (found[slot].size() >= limit) return;
      }
    }
  };

  if (want <= 1) {
    collect(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = total / want;
    for (std::uint64_t t = 0; t < want; ++t) {
      std::uint64_t lo = t * chunk;
      std::uint64_t hi = (t + 1 == want) ? total : lo + chunk;
      pool.emplace_back(collect, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Vertex> out;
  for (const auto& part : found)
    for (std::uint64_t idx : part) {
      if (out.size() >= limit) return out;
      out.push_back(vertex_from_index(c.n, idx));
    }
  return out;
}

std::vector<std::uint32_t> coverage_counts(const Cover& c, int guard) {
  c.validate();
  std::uint64_t total = cube_size(c.n, guard);
  FastEvaluator fast(c);
  std::vector<std::uint32_t> counts(total, 0);
  enumerate_cube(
      c.n,
      [&](const Vertex& x) {
        counts[index_of_vertex(x)] =
            static_cast<std::uint32_t>(count_covering(c, fast, x, 0, nullptr));
      },
      guard);
  return counts;
}

EssentialityReport check_essential(const Cover& c, int guard, int threads) {
  c.validate();
  EssentialityReport rep;

  // variables present in some normal
  std::vector<bool> seen(static_cast<std::size_t>(c.n), false);
  for (const Hyperplane& h : c.planes)
    for (int j = 0; j < c.n; ++j)
      if (!h.normal[static_cast<std::size_t>(j)].is_zero()) seen[static_cast<std::size_t>(j)] = true;
  for (int j = 0; j < c.n; ++j)
    if (!seen[static_cast<std::size_t>(j)]) rep.missing_variables.push_back(j);
  rep.e2_holds = rep.missing_variables.empty();

  // sparsity law: every normal has fewer than 2k non-zero entries
  for (int i = 0; i < c.k(); ++i)
    if (sparsity(c.planes[static_cast<std::size_t>(i)].normal) >= 2 * c.k())
      rep.sparsity_offenders.push_back(i);
  rep.sparsity_ok = rep.sparsity_offenders.empty();

  ScanResult scan = scan_cube(c, guard, threads);
  rep.e1_holds = scan.first_uncovered == kNone;
  if (!rep.e1_holds) rep.e1_witness = vertex_from_index(c.n, scan.first_uncovered);
  rep.private_witnesses.resize(static_cast<std::size_t>(c.k()));
  rep.e3_holds = true;
  for (int i = 0; i < c.k(); ++i) {
    std::uint64_t idx = scan.first_private[static_cast<std::size_t>(i)];
    if (idx == kNone)
      rep.e3_holds = false;
    else
      rep.private_witnesses[static_cast<std::size_t>(i)] = vertex_from_index(c.n, idx);
  }
  return rep;
}

}  // namespace cubecover
