#include "cubecover/finder.hpp"

#include <algorithm>

#include "cubecover/bang.hpp"
#include "cubecover/linalg.hpp"
#include "cubecover/powers.hpp"
#include "cubecover/rng.hpp"
#include "cubecover/rounding.hpp"
#include "cubecover/verifier.hpp"

namespace cubecover {

namespace {

// Seed streams: one derived generator per phase attempt, so retries are
// independent and reproducible, and parallel attempt execution would
// produce the same winner.
constexpr std::uint64_t kPhase1Stream = 1'000'000;
constexpr std::uint64_t kPhase2Stream = 2'000'000;
constexpr std::uint64_t kPhase3Stream = 3'000'000;

Rat fixed_part(const Cover& c, const PartialVertex& u, int plane) {
  Rat acc;
  const RatVec& v = c.planes[static_cast<std::size_t>(plane)].normal;
  for (const auto& [coord, sign] : u.assigned) {
    const Rat& e = v[static_cast<std::size_t>(coord)];
    if (e.is_zero()) continue;
    if (sign > 0)
      acc += e;
    else
      acc -= e;
  }
  return acc;
}

}  // namespace

void PartialVertex::set(int coord, std::int8_t sign, char phase) {
  if (assigned.count(coord)) throw std::logic_error("partial vertex: coordinate assigned twice");
  assigned[coord] = sign;
  phase_tag[coord] = phase;
}

PartialVertex phase1(const Cover& c, const FourWayDecomposition& d, const ParamSet& p) {
  PartialVertex u;
  u.n = c.n;
  const std::vector<int>& coords = d.n3;
  if (coords.empty()) return u;

  const std::size_t kx = d.k1.size();
  std::vector<const RatVec*> rows;
  std::vector<Rat> targets;
  rows.reserve(kx);
  for (int i : d.k1) {
    rows.push_back(&c.planes[static_cast<std::size_t>(i)].normal);
    targets.push_back(c.planes[static_cast<std::size_t>(i)].offset);
  }

  auto accept = [&](const std::vector<std::int8_t>& signs) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rat acc;
      for (std::size_t ci = 0; ci < coords.size(); ++ci) {
        const Rat& e = (*rows[r])[static_cast<std::size_t>(coords[ci])];
        if (e.is_zero()) continue;
        if (signs[ci] > 0)
          acc += e;
        else
          acc -= e;
      }
      if (acc == targets[r]) return false;
    }
    return true;
  };

  if (coords.size() <= 20) {
    // exhaustive, first avoider in enumeration order; running plane values
    // are maintained incrementally across the lexicographic walk
    std::vector<std::int8_t> signs(coords.size(), -1);
    std::vector<Rat> vals(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Rat acc;
      for (int coord : coords) acc -= (*rows[r])[static_cast<std::size_t>(coord)];
      vals[r] = acc;
    }
    std::uint64_t total = std::uint64_t{1} << coords.size();
    for (std::uint64_t idx = 0;; ++idx) {
      bool ok = true;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (vals[r] == targets[r]) {
          ok = false;
          break;
        }
      if (ok) {
        for (std::size_t ci = 0; ci < coords.size(); ++ci) u.set(coords[ci], signs[ci], '1');
        return u;
      }
      if (idx + 1 == total) break;
      std::size_t j = coords.size() - 1;
      while (signs[j] > 0) {
        signs[j] = -1;
        for (std::size_t r = 0; r < rows.size(); ++r)
          vals[r] -= Rat(2) * (*rows[r])[static_cast<std::size_t>(coords[j])];
        --j;
      }
      signs[j] = 1;
      for (std::size_t r = 0; r < rows.size(); ++r)
        vals[r] += Rat(2) * (*rows[r])[static_cast<std::size_t>(coords[j])];
    }
    throw PhaseFailure("I", "every excluded-column assignment lies on some plane", true);
  }

  for (int attempt = 0; attempt < p.max_tries; ++attempt) {
    SplitMix64 rng(derive_seed(p.seed, kPhase1Stream + static_cast<std::uint64_t>(attempt)));
    std::vector<std::int8_t> signs(coords.size());
    for (auto& s : signs) s = rand_sign(rng);
    if (accept(signs)) {
      for (std::size_t ci = 0; ci < coords.size(); ++ci) u.set(coords[ci], signs[ci], '1');
      return u;
    }
  }
  throw PhaseFailure("I", "sampling budget exhausted", false);
}

PartialVertex phase2(const Cover& c, const FourWayDecomposition& d, const PartialVertex& u1,
                     const ParamSet& p) {
  PartialVertex u = u1;
  const std::vector<int>& coords = d.n2;

  struct Constraint {
    const RatVec* normal;
    Rat rest;      // offset minus the already fixed part
    Rat exceed;    // 0 for outright avoidance; l1 of the kept part otherwise
    bool strict_margin;
  };
  std::vector<Constraint> cons;
  for (int i : d.k2) {
    Constraint ct;
    ct.normal = &c.planes[static_cast<std::size_t>(i)].normal;
    ct.rest = c.planes[static_cast<std::size_t>(i)].offset - fixed_part(c, u1, i);
    ct.strict_margin = false;
    cons.push_back(std::move(ct));
  }
  for (int i : d.k4) {
    Constraint ct;
    ct.normal = &c.planes[static_cast<std::size_t>(i)].normal;
    ct.rest = c.planes[static_cast<std::size_t>(i)].offset - fixed_part(c, u1, i);
    Rat l1;
    for (int j : d.n1) l1 += abs((*ct.normal)[static_cast<std::size_t>(j)]);
    ct.exceed = l1;
    ct.strict_margin = true;
    cons.push_back(std::move(ct));
  }

  auto accept = [&](const std::vector<std::int8_t>& signs) {
    for (const Constraint& ct : cons) {
      Rat acc;
      for (std::size_t ci = 0; ci < coords.size(); ++ci) {
        const Rat& e = (*ct.normal)[static_cast<std::size_t>(coords[ci])];
        if (e.is_zero()) continue;
        if (signs[ci] > 0)
          acc += e;
        else
          acc -= e;
      }
      if (ct.strict_margin) {
        if (abs(acc - ct.rest) <= ct.exceed) return false;
      } else {
        if (acc == ct.rest) return false;
      }
    }
    return true;
  };

  if (cons.empty()) {
    for (int coord : coords) u.set(coord, 1, '2');
    return u;
  }
  if (coords.empty()) {
    if (accept({})) return u;
    throw PhaseFailure("II", "no middle columns left and the fixed part violates a condition",
                       false);
  }

  for (int attempt = 0; attempt < p.max_tries; ++attempt) {
    SplitMix64 rng(derive_seed(p.seed, kPhase2Stream + static_cast<std::uint64_t>(attempt)));
    std::vector<std::int8_t> signs(coords.size());
    for (auto& s : signs) s = rand_sign(rng);
    if (accept(signs)) {
      for (std::size_t ci = 0; ci < coords.size(); ++ci) u.set(coords[ci], signs[ci], '2');
      return u;
    }
  }
  throw PhaseFailure("II", "sampling budget exhausted", false);
}

PartialVertex phase3(const Cover& c, const FourWayDecomposition& d, const PartialVertex& u12,
                     const ParamSet& p, std::vector<std::string>* notes) {
  PartialVertex u = u12;
  const std::vector<int>& coords = d.n1;
  const std::size_t k3 = d.k3.size();

  if (k3 == 0) {
    for (int coord : coords) u.set(coord, 1, '3');
    return u;
  }
  if (coords.size() <= k3)
    throw PhaseFailure("III", "no slack: kept columns do not exceed the active rows", true);

  // rest_i = offset minus the inner product with the already fixed part
  RatVec rest;
  rest.reserve(k3);
  for (int i : d.k3) rest.push_back(c.planes[static_cast<std::size_t>(i)].offset - fixed_part(c, u12, i));

  // rational upper normalizers: phi_hat >= 1/sqrt(mass), so the Gram
  // diagonal lands at or above one and the flip-ascent margin still covers
  // a full theta
  RatVec phi_hat;
  phi_hat.reserve(k3);
  for (std::size_t r = 0; r < k3; ++r) {
    const Rat& psq = d.phi_sq.at(d.k3[r]);
    phi_hat.push_back(sqrt_bound(psq, Round::Up, 64));
  }

  RatMat w_rows(k3, RatVec(coords.size()));
  for (std::size_t r = 0; r < k3; ++r) {
    const RatVec& normal = c.planes[static_cast<std::size_t>(d.k3[r])].normal;
    for (std::size_t ci = 0; ci < coords.size(); ++ci)
      w_rows[r][ci] = phi_hat[r] * normal[static_cast<std::size_t>(coords[ci])];
  }

  RatMat gram(k3, RatVec(k3));
  for (std::size_t a = 0; a < k3; ++a)
    for (std::size_t b = a; b < k3; ++b) {
      Rat g = dot(w_rows[a], w_rows[b]);
      gram[a][b] = g;
      gram[b][a] = g;
    }
  for (std::size_t r = 0; r < k3; ++r)
    if (gram[r][r] < Rat(1)) throw std::logic_error("phase3: normalizer below one");

  RatVec gamma;
  gamma.reserve(k3);
  for (std::size_t r = 0; r < k3; ++r) gamma.push_back(phi_hat[r] * rest[r]);

  const Rat theta = pow_bound(Int(c.n), p.theta_exp, Round::Down, 64);
  std::vector<int> eps = flip_ascent(gram, gamma, theta);

  RatVec z(coords.size());
  for (std::size_t r = 0; r < k3; ++r)
    for (std::size_t ci = 0; ci < coords.size(); ++ci) {
      if (w_rows[r][ci].is_zero()) continue;
      z[ci] += theta * Rat(eps[r]) * w_rows[r][ci];
    }
  for (const Rat& e : z)
    if (abs(e) > Rat(1))
      throw PhaseFailure("III", "width times column sums exceeds the cube bound", true);

  // exact margin from the ascent fixed point
  for (std::size_t r = 0; r < k3; ++r)
    if (abs(dot(w_rows[r], z) - gamma[r]) < theta)
      throw std::logic_error("phase3: margin below theta at the fixed point");

  RoundedPoint rounded = round_preserving(w_rows, z);

  // per-row variance of the random completion, with the exact normalizer,
  // classified against the variance cut (analysis detail, never branched on)
  std::vector<std::string> sigma_notes;
  for (std::size_t r = 0; r < k3; ++r) {
    const RatVec& normal = c.planes[static_cast<std::size_t>(d.k3[r])].normal;
    Rat sigma_sq;
    for (std::size_t ci = 0; ci < coords.size(); ++ci) {
      const Rat& e = normal[static_cast<std::size_t>(coords[ci])];
      if (e.is_zero()) continue;
      sigma_sq += (Rat(1) - square(rounded.w[ci])) * d.phi_sq.at(d.k3[r]) * square(e);
    }
    const char* side =
        cmp_rat_vs_pow(sigma_sq, Int(c.n), p.variance_cut_exp) > 0 ? "above" : "at or below";
    sigma_notes.push_back("sigma_sq[" + std::to_string(d.k3[r]) + "] = " + sigma_sq.to_string() +
                          " (" + side + " the variance cut)");
  }
  if (notes) notes->insert(notes->end(), sigma_notes.begin(), sigma_notes.end());

  auto avoided = [&](const std::vector<std::int8_t>& signs) {
    for (std::size_t r = 0; r < k3; ++r) {
      const RatVec& normal = c.planes[static_cast<std::size_t>(d.k3[r])].normal;
      Rat acc;
      for (std::size_t ci = 0; ci < coords.size(); ++ci) {
        const Rat& e = normal[static_cast<std::size_t>(coords[ci])];
        if (e.is_zero()) continue;
        if (signs[ci] > 0)
          acc += e;
        else
          acc -= e;
      }
      if (acc == rest[r]) return false;
    }
    return true;
  };

  if (rounded.fractional_coords.empty()) {
    std::vector<std::int8_t> signs(coords.size());
    for (std::size_t ci = 0; ci < coords.size(); ++ci)
      signs[ci] = rounded.w[ci] == Rat(1) ? std::int8_t{1} : std::int8_t{-1};
    if (!avoided(signs)) throw std::logic_error("phase3: margin vertex failed certification");
    for (std::size_t ci = 0; ci < coords.size(); ++ci) u.set(coords[ci], signs[ci], '3');
    return u;
  }

  for (int attempt = 0; attempt < p.max_tries; ++attempt) {
    SplitMix64 rng(derive_seed(p.seed, kPhase3Stream + static_cast<std::uint64_t>(attempt)));
    std::vector<std::int8_t> signs = sample_rounding(rounded.w, rng);
    if (avoided(signs)) {
      for (std::size_t ci = 0; ci < coords.size(); ++ci) u.set(coords[ci], signs[ci], '3');
      return u;
    }
  }

  PhaseFailure fail("III", "sampling budget exhausted", false);
  fail.notes = sigma_notes;
  throw fail;
}

FinderOutcome find_uncovered(const Cover& c, const ParamSet& p, bool fallback_exhaustive,
                             int guard) {
  c.validate();
  p.validate();
  FinderOutcome out;

  auto run_fallback = [&](FinderOutcome base) {
    if (!fallback_exhaustive || c.n > guard) return base;
    std::vector<Vertex> hits = uncovered_vertices(c, 1, guard);
    if (hits.empty()) {
      base.notes.push_back("exhaustive scan: the input covers every vertex");
      return base;
    }
    FinderOutcome found;
    found.status = FinderOutcome::Status::Found;
    found.vertex = hits[0];
    found.used_fallback = true;
    found.notes = base.notes;
    for (int i = 0; i < c.k(); ++i)
      found.certificate.push_back(
          PlaneEvaluation{i, evaluate(c.planes[static_cast<std::size_t>(i)], hits[0])});
    return found;
  };

  if (cmp_rat_vs_pow(Rat(c.k()) * p.divisor, Int(c.n), p.alpha) > 0) {
    out.status = FinderOutcome::Status::PremiseFailure;
    out.failed_phase = "premise";
    out.reason = "plane count exceeds n^alpha / divisor";
    return run_fallback(std::move(out));
  }

  FourWayDecomposition d;
  try {
    RatMat rows;
    rows.reserve(static_cast<std::size_t>(c.k()));
    for (const Hyperplane& h : c.planes) rows.push_back(h.normal);
    d = decompose_four_way(rows, c.n, p);
    CheckReport check = check_four_way(rows, c.n, d, p);
    std::string summary = check.pass ? "decomposition checker: pass" : "decomposition checker:";
    if (!check.pass)
      for (const CheckItem& it : check.items)
        if (!it.pass) summary += " " + it.name;
    out.notes.push_back(summary);
    if (d.empty_k3) out.notes.push_back("decomposition: no active rows on the kept columns");
  } catch (const PremiseError& e) {
    out.status = FinderOutcome::Status::PremiseFailure;
    out.failed_phase = "decompose";
    out.reason = e.what();
    return run_fallback(std::move(out));
  }

  PartialVertex u;
  try {
    u = phase1(c, d, p);
    u = phase2(c, d, u, p);
    u = phase3(c, d, u, p, &out.notes);
  } catch (const PhaseFailure& e) {
    out.status = e.premise ? FinderOutcome::Status::PremiseFailure
                           : FinderOutcome::Status::PhaseFailure;
    out.failed_phase = e.phase;
    out.reason = e.reason;
    out.notes.insert(out.notes.end(), e.notes.begin(), e.notes.end());
    return run_fallback(std::move(out));
  }

  if (static_cast<int>(u.assigned.size()) != c.n)
    throw std::logic_error("find_uncovered: assembled vertex is incomplete");
  Vertex vtx;
  vtx.n = c.n;
  vtx.signs.resize(static_cast<std::size_t>(c.n));
  for (const auto& [coord, sign] : u.assigned) vtx.signs[static_cast<std::size_t>(coord)] = sign;

  // unconditional certificate, independent of the phase logic
  std::vector<PlaneEvaluation> cert;
  bool all_nonzero = true;
  for (int i = 0; i < c.k(); ++i) {
    Rat val = evaluate(c.planes[static_cast<std::size_t>(i)], vtx);
    all_nonzero = all_nonzero && !val.is_zero();
    cert.push_back(PlaneEvaluation{i, std::move(val)});
  }
  if (!all_nonzero)
    throw std::logic_error("find_uncovered: phases accepted a covered vertex");

  out.status = FinderOutcome::Status::Found;
  out.vertex = std::move(vtx);
  out.certificate = std::move(cert);
  return out;
}

}  // namespace cubecover
