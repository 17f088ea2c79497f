#include "cubecover/anticoncentration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cubecover/scales.hpp"

namespace cubecover {

ProductMeasure ProductMeasure::uniform(int n) {
  ProductMeasure p;
  p.n = n;
  p.marginals.assign(static_cast<std::size_t>(n), Rat(1, 2));
  return p;
}

void ProductMeasure::validate() const {
  if (n < 1 || static_cast<int>(marginals.size()) != n)
    throw std::invalid_argument("product measure: marginal count mismatch");
  for (const Rat& p : marginals)
    if (p.sign() < 0 || p > Rat(1))
      throw std::invalid_argument("product measure: marginal outside [0,1]");
}

Rat ProductMeasure::sigma_sq() const {
  Rat acc;
  for (const Rat& p : marginals) acc += Rat(4) * p * (Rat(1) - p);
  return acc;
}

Vertex ProductMeasure::sample(SplitMix64& rng) const {
  Vertex v;
  v.n = n;
  v.signs.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    v.signs[static_cast<std::size_t>(j)] =
        bernoulli(rng, marginals[static_cast<std::size_t>(j)]) ? std::int8_t{1} : std::int8_t{-1};
  return v;
}

namespace {

struct ScaledInts {
  std::vector<Int> entries;
  Int target;
  Int scale;
};

// Common denominator scaling: <x,v> = a iff <x, Lv> = La.
ScaledInts scale_to_integers(const RatVec& v, const Rat& a) {
  Int l = a.den();
  for (const Rat& x : v) {
    Int d = x.den(), g;
    mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    l = l / g * d;
  }
  ScaledInts s;
  s.entries.reserve(v.size());
  for (const Rat& x : v) s.entries.push_back(x.num() * (l / x.den()));
  s.target = a.num() * (l / a.den());
  s.scale = l;
  return s;
}

constexpr long kDpRangeCap = 1 << 22;

}  // namespace

LevelCounts uniform_level_counts(const RatVec& v) {
  const int n = static_cast<int>(v.size());
  if (n > 62) throw std::invalid_argument("uniform_level_counts: dimension guard exceeded");
  ScaledInts s = scale_to_integers(v, Rat(0));
  Int range_big = 0;
  for (const Int& e : s.entries) range_big += abs(e);
  if (range_big > kDpRangeCap)
    throw std::invalid_argument("uniform_level_counts: entry range guard exceeded");
  long range = range_big.get_si();

  LevelCounts out;
  out.reach = range;
  out.scale_den = s.scale;
  out.counts.assign(static_cast<std::size_t>(2 * range + 1), 0);
  out.counts[static_cast<std::size_t>(range)] = 1;
  long reach = 0;
  for (const Int& eb : s.entries) {
    long e = eb.get_si();
    if (e == 0) {
      for (auto& c : out.counts) c *= 2;
      continue;
    }
    long ae = e < 0 ? -e : e;
    std::vector<std::uint64_t> next(out.counts.size(), 0);
    for (long sum = -reach; sum <= reach; ++sum) {
      std::uint64_t c = out.counts[static_cast<std::size_t>(sum + range)];
      if (!c) continue;
      next[static_cast<std::size_t>(sum + e + range)] += c;
      next[static_cast<std::size_t>(sum - e + range)] += c;
    }
    out.counts = std::move(next);
    reach += ae;
  }
  return out;
}

Int uniform_atom_count(const RatVec& v, const Rat& a) {
  const int n = static_cast<int>(v.size());
  if (n > 62) throw std::invalid_argument("uniform_atom_count: dimension guard exceeded");
  ScaledInts s = scale_to_integers(v, a);
  Int range_big = 0;
  for (const Int& e : s.entries) range_big += abs(e);
  if (range_big > kDpRangeCap)
    throw std::invalid_argument("uniform_atom_count: entry range guard exceeded");
  if (abs(s.target) > range_big) return 0;
  long range = range_big.get_si();
  long target = s.target.get_si();

  std::vector<unsigned long long> dist(static_cast<std::size_t>(2 * range + 1), 0);
  dist[static_cast<std::size_t>(range)] = 1;  // offset representation
  long reach = 0;
  for (const Int& eb : s.entries) {
    long e = eb.get_si();
    if (e == 0) {
      for (auto& c : dist) c *= 2;
      continue;
    }
    long ae = e < 0 ? -e : e;
    std::vector<unsigned long long> next(dist.size(), 0);
    for (long sum = -reach; sum <= reach; ++sum) {
      unsigned long long c = dist[static_cast<std::size_t>(sum + range)];
      if (!c) continue;
      next[static_cast<std::size_t>(sum + e + range)] += c;
      next[static_cast<std::size_t>(sum - e + range)] += c;
    }
    dist = std::move(next);
    reach += ae;
  }
  return Int(static_cast<unsigned long>(dist[static_cast<std::size_t>(target + range)]));
}

Rat atom_probability(const RatVec& v, const Rat& a, const ProductMeasure& p) {
  p.validate();
  if (static_cast<int>(v.size()) != p.n)
    throw std::invalid_argument("atom_probability: dimension mismatch");

  ScaledInts s = scale_to_integers(v, a);
  Int range_big = 0;
  for (const Int& e : s.entries) range_big += abs(e);

  if (range_big <= kDpRangeCap) {
    long range = range_big.get_si();
    if (abs(s.target) > range_big) return Rat(0);
    long target = s.target.get_si();
    std::vector<Rat> dist(static_cast<std::size_t>(2 * range + 1), Rat(0));
    dist[static_cast<std::size_t>(range)] = Rat(1);
    long reach = 0;
    for (int j = 0; j < p.n; ++j) {
      long e = s.entries[static_cast<std::size_t>(j)].get_si();
      const Rat& pj = p.marginals[static_cast<std::size_t>(j)];
      if (e == 0) continue;  // +e and -e coincide, total mass unchanged
      long ae = e < 0 ? -e : e;
      std::vector<Rat> next(dist.size(), Rat(0));
      Rat qj = Rat(1) - pj;
      for (long sum = -reach; sum <= reach; ++sum) {
        const Rat& c = dist[static_cast<std::size_t>(sum + range)];
        if (c.is_zero()) continue;
        next[static_cast<std::size_t>(sum + e + range)] += c * pj;
        next[static_cast<std::size_t>(sum - e + range)] += c * qj;
      }
      dist = std::move(next);
      reach += ae;
    }
    return dist[static_cast<std::size_t>(target + range)];
  }

  if (p.n > 20) throw std::invalid_argument("atom_probability: guard exceeded for wide data");
  std::map<Rat, Rat> dist;
  dist[Rat(0)] = Rat(1);
  for (int j = 0; j < p.n; ++j) {
    const Rat& vj = v[static_cast<std::size_t>(j)];
    const Rat& pj = p.marginals[static_cast<std::size_t>(j)];
    if (vj.is_zero()) continue;
    std::map<Rat, Rat> next;
    Rat qj = Rat(1) - pj;
    for (const auto& [sum, c] : dist) {
      next[sum + vj] += c * pj;
      next[sum - vj] += c * qj;
    }
    dist = std::move(next);
  }
  auto it = dist.find(a);
  return it == dist.end() ? Rat(0) : it->second;
}

LoCheck lo_check(const RatVec& v, const Rat& a) {
  int s = sparsity(v);
  if (s == 0) throw std::invalid_argument("lo_check: zero vector");
  const int n = static_cast<int>(v.size());
  Int count = uniform_atom_count(v, a);
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n));
  LoCheck out;
  out.probability = Rat(count, den);
  out.bound = 1.0 / std::sqrt(static_cast<double>(s));
  // probability <= 1/sqrt(s)  <=>  count^2 * s <= 4^n
  Int lhs = count * count * s;
  Int rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 4, static_cast<unsigned long>(n));
  out.holds = lhs <= rhs;
  return out;
}

AntichainResult antichain_of_level_set(const RatVec& v, const Rat& mu, int guard) {
  const int n = static_cast<int>(v.size());
  if (sparsity(v) != n)
    throw std::invalid_argument("antichain_of_level_set: v must have full support");

  AntichainResult out;
  out.flip_signs.resize(static_cast<std::size_t>(n));
  RatVec flipped(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int sg = v[static_cast<std::size_t>(j)].sign();
    out.flip_signs[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(sg);
    flipped[static_cast<std::size_t>(j)] = sg > 0 ? v[static_cast<std::size_t>(j)] : -v[static_cast<std::size_t>(j)];
  }

  enumerate_cube(
      n,
      [&](const Vertex& x) {
        Rat acc;
        for (int j = 0; j < n; ++j) {
          const Rat& f = flipped[static_cast<std::size_t>(j)];
          if (x.signs[static_cast<std::size_t>(j)] > 0)
            acc += f;
          else
            acc -= f;
        }
        if (acc == mu) out.members.push_back(x);
      },
      guard);

  out.certified = true;
  for (std::size_t a = 0; a < out.members.size() && out.certified; ++a)
    for (std::size_t b = a + 1; b < out.members.size(); ++b) {
      bool a_le_b = true, b_le_a = true;
      for (int j = 0; j < n; ++j) {
        auto sa = out.members[a].signs[static_cast<std::size_t>(j)];
        auto sb = out.members[b].signs[static_cast<std::size_t>(j)];
        if (sa > sb) a_le_b = false;
        if (sb > sa) b_le_a = false;
      }
      if (a_le_b || b_le_a) {
        out.certified = false;
        break;
      }
    }
  return out;
}

AntichainMassReport antichain_mass_experiment(const ProductMeasure& p, int trials,
                                              std::uint64_t seed) {
  p.validate();
  if (p.sigma_sq().is_zero())
    throw std::invalid_argument("antichain_mass_experiment: degenerate measure");

  AntichainMassReport rep;
  rep.sigma_sq = p.sigma_sq();
  double sigma = std::sqrt(rep.sigma_sq.to_double());
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    AntichainTrial trial;
    trial.v.resize(static_cast<std::size_t>(p.n));
    for (int j = 0; j < p.n; ++j) {
      long mag = 1 + static_cast<long>(rng.next() % 9);
      trial.v[static_cast<std::size_t>(j)] = Rat(rand_sign(rng) > 0 ? mag : -mag);
    }
    Vertex x = p.sample(rng);
    Rat level;
    for (int j = 0; j < p.n; ++j) {
      const Rat& vj = trial.v[static_cast<std::size_t>(j)];
      if (x.signs[static_cast<std::size_t>(j)] > 0)
        level += vj;
      else
        level -= vj;
    }
    trial.level = level;
    trial.mass = atom_probability(trial.v, level, p);
    trial.mass_sigma = trial.mass.to_double() * sigma;
    rep.max_mass_sigma = std::max(rep.max_mass_sigma, trial.mass_sigma);
    rep.trials.push_back(std::move(trial));
  }
  return rep;
}

ScalesDecayReport scales_decay_experiment(const std::vector<int>& s_counts, const Rat& c0,
                                          const Rat& delta, const Rat& b, const Rat& a,
                                          int coords_per_scale) {
  if (delta.sign() <= 0) throw std::invalid_argument("scales experiment: delta must be positive");
  if (coords_per_scale < 1) throw std::invalid_argument("scales experiment: empty groups");

  ScalesDecayReport rep;
  Rat window = b * delta;
  for (int s_count : s_counts) {
    ScalesTrial trial;
    trial.s_count = s_count;
    // group s carries coords of magnitude delta * (2 c0)^(S-s); consecutive
    // group norms then decay by the factor 2 c0 > c0 exactly
    Rat step = Rat(2) * c0;
    for (int s = 1; s <= s_count; ++s) {
      Rat magnitude = delta;
      for (int q = 0; q < s_count - s; ++q) magnitude *= step;
      for (int c = 0; c < coords_per_scale; ++c) trial.vector.push_back(magnitude);
    }
    int n = static_cast<int>(trial.vector.size());
    if (!find_scales(trial.vector, s_count, c0))
      throw std::logic_error("scales experiment: generator failed its own detector");

    Int hits = 0;
    enumerate_cube(n, [&](const Vertex& x) {
      Rat acc;
      for (int j = 0; j < n; ++j) {
        const Rat& vj = trial.vector[static_cast<std::size_t>(j)];
        if (x.signs[static_cast<std::size_t>(j)] > 0)
          acc += vj;
        else
          acc -= vj;
      }
      if (abs(acc - a) <= window) hits += 1;
    });
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(n));
    trial.probability = Rat(hits, den);
    rep.trials.push_back(std::move(trial));
  }

  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < rep.trials.size(); ++i)
    if (rep.trials[i].s_count < rep.trials[i + 1].s_count &&
        rep.trials[i].probability < rep.trials[i + 1].probability)
      rep.monotone = false;
  return rep;
}

}  // namespace cubecover
