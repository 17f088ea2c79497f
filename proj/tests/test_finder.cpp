#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubecover/finder.hpp"
#include "cubecover/json_io.hpp"
#include "cubecover/powers.hpp"
#include "cubecover/rng.hpp"
#include "cubecover/verifier.hpp"

using namespace cubecover;

namespace {

Rat R(const char* s) { return Rat::parse(s); }

Cover fixture(const std::string& name) { return load_cover(std::string(FIXTURES_DIR) + "/" + name); }

ParamSet desk_params() {
  ParamSet p;
  p.alpha = R("0.9");
  p.divisor = Rat(1);
  p.sparsity_exp = R("0.5");
  p.col_mass_exp = R("0.25");
  p.col_mass_exp_pre = R("0.6");
  p.scale_count_override = 2;
  p.c0 = Rat(2);
  p.max_tries = 500;
  return p;
}

Cover single_plane(int n, std::initializer_list<const char*> normal, const char* offset) {
  Cover c;
  c.n = n;
  Hyperplane h;
  for (const char* s : normal) h.normal.push_back(R(s));
  h.offset = R(offset);
  c.planes.push_back(std::move(h));
  return c;
}

}  // namespace

TEST_CASE("phase one: no excluded planes means a vacuous pass") {
  Cover c = single_plane(3, {"1", "1", "1"}, "0");
  FourWayDecomposition d;
  d.k3 = {0};
  d.n1 = {0, 1, 2};
  PartialVertex u = phase1(c, d, desk_params());
  CHECK(u.assigned.empty());
}

TEST_CASE("phase one: a unique avoider is found exhaustively") {
  Cover c = single_plane(3, {"1", "0", "0"}, "1");
  FourWayDecomposition d;
  d.k1 = {0};
  d.n3 = {0};
  d.n1 = {1, 2};
  PartialVertex u = phase1(c, d, desk_params());
  REQUIRE(u.assigned.count(0));
  CHECK(u.assigned.at(0) == -1);
  CHECK(u.phase_tag.at(0) == '1');
}

TEST_CASE("phase one: random instances re-verified against every excluded plane") {
  SplitMix64 rng(17);
  for (int t = 0; t < 20; ++t) {
    int n = 6;
    Cover c;
    c.n = n;
    int k = 1 + static_cast<int>(rng.next() % 3);
    for (int i = 0; i < k; ++i) {
      Hyperplane h;
      h.normal.assign(static_cast<std::size_t>(n), Rat(0));
      // support inside the first four columns only
      for (int j = 0; j < 4; ++j)
        h.normal[static_cast<std::size_t>(j)] = Rat(static_cast<long>(rng.next() % 5) - 2);
      if (sparsity(h.normal) == 0) h.normal[0] = Rat(1);
      h.offset = Rat(static_cast<long>(rng.next() % 5) - 2);
      c.planes.push_back(std::move(h));
    }
    FourWayDecomposition d;
    for (int i = 0; i < k; ++i) d.k1.push_back(i);
    d.n3 = {0, 1, 2, 3};
    d.n1 = {4, 5};
    PartialVertex u;
    bool failed = false;
    try {
      u = phase1(c, d, desk_params());
    } catch (const PhaseFailure&) {
      failed = true;  // the four-column planes may genuinely cover that face
    }
    if (failed) continue;
    for (int i = 0; i < k; ++i) {
      Rat acc = -c.planes[static_cast<std::size_t>(i)].offset;
      for (const auto& [coord, sign] : u.assigned)
        acc += Rat(sign) * c.planes[static_cast<std::size_t>(i)].normal[static_cast<std::size_t>(coord)];
      CHECK(!acc.is_zero());
    }
  }
}

TEST_CASE("phase two: nothing to do when no middle or scaled rows exist") {
  Cover c = single_plane(3, {"1", "1", "1"}, "0");
  FourWayDecomposition d;
  d.k3 = {0};
  d.n1 = {0};
  d.n2 = {1, 2};
  PartialVertex u0;
  u0.n = 3;
  PartialVertex u = phase2(c, d, u0, desk_params());
  CHECK(u.assigned.size() == 2);  // all middle columns fixed deterministically
  CHECK(u.assigned.at(1) == 1);
  CHECK(u.assigned.at(2) == 1);
}

TEST_CASE("phase two: parity mismatch accepts any middle assignment") {
  // plane with middle block (1,1,1,1) and target 1: sums are even, so every
  // draw avoids it
  Cover c = single_plane(5, {"0", "1", "1", "1", "1"}, "1");
  FourWayDecomposition d;
  d.k2 = {0};
  d.n1 = {0};
  d.n2 = {1, 2, 3, 4};
  PartialVertex u0;
  u0.n = 5;
  PartialVertex u = phase2(c, d, u0, desk_params());
  Rat sum;
  for (int j = 1; j <= 4; ++j) sum += Rat(u.assigned.at(j));
  CHECK(sum != Rat(1));
}

TEST_CASE("phase two: scaled rows end out of reach of any later completion") {
  // middle coordinate carries 100; kept block (1,1) has l1 norm 2, so the
  // residual 100 +- 2 clears the margin whatever phase three does
  Cover c = single_plane(4, {"1", "1", "100", "0"}, "2");
  FourWayDecomposition d;
  d.k4 = {0};
  d.n1 = {0, 1};
  d.n2 = {2};
  d.n3 = {3};
  PartialVertex u0;
  u0.n = 4;
  u0.set(3, -1, '1');
  PartialVertex u = phase2(c, d, u0, desk_params());
  REQUIRE(u.assigned.count(2));
  // brute force over all kept completions: the plane is always avoided
  for (int s0 : {-1, 1})
    for (int s1 : {-1, 1}) {
      Rat val = Rat(s0) + Rat(s1) + Rat(100) * Rat(u.assigned.at(2)) - Rat(2);
      CHECK(!val.is_zero());
    }
}

TEST_CASE("avoidance survives every later completion, phase by phase") {
  // one excluded-block plane, one middle plane, one scaled plane; after the
  // early phases fix their coordinates, brute force over all kept
  // completions shows none of the three planes can be reached again
  Cover c;
  c.n = 5;
  c.planes.push_back(Hyperplane{{R("2"), Rat(0), Rat(0), Rat(0), Rat(0)}, Rat(2)});    // excluded only
  c.planes.push_back(Hyperplane{{Rat(0), Rat(1), Rat(1), Rat(0), Rat(0)}, Rat(1)});    // middle only
  c.planes.push_back(Hyperplane{{Rat(0), Rat(1), Rat(0), Rat(50), Rat(1)}, Rat(3)});   // scaled
  FourWayDecomposition d;
  d.k1 = {0};
  d.k2 = {1};
  d.k4 = {2};
  d.n3 = {0};
  d.n2 = {1, 2, 3};
  d.n1 = {4};
  ParamSet p = desk_params();
  PartialVertex u = phase1(c, d, p);
  u = phase2(c, d, u, p);
  REQUIRE(u.assigned.size() == 4);  // everything except the kept column
  for (int s4 : {-1, 1}) {
    PartialVertex full = u;
    full.set(4, static_cast<std::int8_t>(s4), '3');
    for (int i = 0; i < 3; ++i) {
      Rat acc = -c.planes[static_cast<std::size_t>(i)].offset;
      for (const auto& [coord, sign] : full.assigned)
        acc += Rat(sign) * c.planes[static_cast<std::size_t>(i)].normal[static_cast<std::size_t>(coord)];
      CAPTURE(i);
      CHECK(!acc.is_zero());
    }
  }
}

TEST_CASE("phase three margin pipeline on a single kept row") {
  Cover c = single_plane(2, {"1", "1"}, "0");
  ParamSet p = desk_params();
  FourWayDecomposition d;
  d.k3 = {0};
  d.n1 = {0, 1};
  d.phi_sq[0] = R("1/2");
  PartialVertex u0;
  u0.n = 2;

  // the margin contract, replicated with independent arithmetic: the width
  // times the solved sign combination stays theta away from the target
  Rat phi_hat = sqrt_bound(d.phi_sq.at(0), Round::Up, 64);
  Rat theta = pow_bound(Int(2), p.theta_exp, Round::Down, 64);
  RatVec w_row{phi_hat, phi_hat};
  Rat gram = dot(w_row, w_row);
  CHECK(gram >= Rat(1));
  RatVec z{theta * phi_hat, theta * phi_hat};  // eps = +1 fixed point
  CHECK(abs(dot(w_row, z) - Rat(0)) >= theta);
  // mutation: dropping the solve step (z = 0) kills the margin when the
  // target gamma is zero
  RatVec z0{Rat(0), Rat(0)};
  CHECK(abs(dot(w_row, z0) - Rat(0)) < theta);

  PartialVertex u = phase3(c, d, u0, p);
  REQUIRE(u.assigned.size() == 2);
  Rat sum = Rat(u.assigned.at(0)) + Rat(u.assigned.at(1));
  CHECK(!sum.is_zero());  // the plane z1 + z2 = 0 is avoided
  CHECK(u.phase_tag.at(0) == '3');
}

TEST_CASE("phase three with no active rows fills the kept block deterministically") {
  Cover c = single_plane(2, {"1", "0"}, "1");
  FourWayDecomposition d;
  d.k1 = {0};
  d.n3 = {0};
  d.n1 = {1};
  PartialVertex u0;
  u0.n = 2;
  u0.set(0, -1, '1');
  PartialVertex u = phase3(c, d, u0, desk_params());
  CHECK(u.assigned.at(1) == 1);
}

TEST_CASE("finder locates a miss of the single diagonal plane") {
  Cover c = fixture("halfplane2.json");
  FinderOutcome o = find_uncovered(c, desk_params());
  REQUIRE(o.status == FinderOutcome::Status::Found);
  REQUIRE(o.vertex.has_value());
  bool plus = o.vertex->signs == std::vector<std::int8_t>{1, 1};
  bool minus = o.vertex->signs == std::vector<std::int8_t>{-1, -1};
  CHECK((plus || minus));
  REQUIRE(o.certificate.size() == 1);
  CHECK(!o.certificate[0].value.is_zero());
  CHECK(!o.used_fallback);
}

TEST_CASE("finder never claims a vertex against a verified essential cover") {
  Cover c = fixture("ess5.json");
  REQUIRE(check_essential(c).essential());
  ParamSet p = desk_params();
  for (std::uint64_t seed : {0ull, 1ull, 2ull, 9ull}) {
    p.seed = seed;
    FinderOutcome o = find_uncovered(c, p);
    CHECK(o.status != FinderOutcome::Status::Found);
    CHECK(!o.failed_phase.empty());
    CHECK(!o.reason.empty());
  }
}

TEST_CASE("deleting one plane from an essential cover exposes its private vertex") {
  for (const char* name : {"diag2.json", "ess3.json", "ess4.json", "ess5.json"}) {
    CAPTURE(name);
    Cover full = fixture(name);
    REQUIRE(check_essential(full).essential());
    for (int drop = 0; drop < full.k(); ++drop) {
      Cover c = full;
      c.planes.erase(c.planes.begin() + drop);
      FinderOutcome o = find_uncovered(c, desk_params(), /*fallback=*/true);
      REQUIRE(o.status == FinderOutcome::Status::Found);
      // independent certification
      for (const Hyperplane& h : c.planes) CHECK(!evaluate(h, *o.vertex).is_zero());
      // the found vertex is covered by the dropped plane in the full cover
      CHECK(evaluate(full.planes[static_cast<std::size_t>(drop)], *o.vertex).is_zero());
    }
  }
}

TEST_CASE("fallback reports honestly when the input is a true cover") {
  Cover c = fixture("degenerate2.json");
  FinderOutcome o = find_uncovered(c, desk_params(), /*fallback=*/true);
  CHECK(o.status != FinderOutcome::Status::Found);
  bool noted = false;
  for (const std::string& n : o.notes) noted = noted || n.find("covers every vertex") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("identical inputs and seeds give identical outcomes") {
  Cover c = fixture("halfplane2.json");
  ParamSet p = desk_params();
  p.seed = 41;
  FinderOutcome a = find_uncovered(c, p);
  FinderOutcome b = find_uncovered(c, p);
  CHECK(a.status == b.status);
  REQUIRE(a.vertex.has_value() == b.vertex.has_value());
  if (a.vertex) CHECK(*a.vertex == *b.vertex);
  REQUIRE(a.certificate.size() == b.certificate.size());
  for (std::size_t i = 0; i < a.certificate.size(); ++i)
    CHECK(a.certificate[i].value == b.certificate[i].value);
}

TEST_CASE("premise failure is structured, not thrown") {
  Cover c = fixture("diag2.json");  // k = 2 exceeds 2^0.9
  FinderOutcome o = find_uncovered(c, desk_params());
  CHECK(o.status == FinderOutcome::Status::PremiseFailure);
  CHECK(o.failed_phase == "premise");
}

TEST_CASE("random non-covers with small supports are found by the pipeline or fallback") {
  SplitMix64 rng(808);
  int found_without_fallback = 0;
  for (int t = 0; t < 15; ++t) {
    int n = 8 + static_cast<int>(rng.next() % 9);  // 8..16
    Cover c;
    c.n = n;
    int k = 1 + static_cast<int>(rng.next() % 3);
    for (int i = 0; i < k; ++i) {
      Hyperplane h;
      h.normal.assign(static_cast<std::size_t>(n), Rat(0));
      for (int s = 0; s < 4; ++s) {
        int j = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        h.normal[static_cast<std::size_t>(j)] = Rat(static_cast<long>(rng.next() % 5) - 2);
      }
      if (sparsity(h.normal) == 0) h.normal[static_cast<std::size_t>(i)] = Rat(1);
      h.offset = Rat(static_cast<long>(rng.next() % 7) - 3);
      c.planes.push_back(std::move(h));
    }
    if (uncovered_vertices(c, 1).empty()) continue;  // skip rare true covers
    FinderOutcome o = find_uncovered(c, desk_params(), /*fallback=*/true);
    CAPTURE(t);
    REQUIRE(o.status == FinderOutcome::Status::Found);
    for (const Hyperplane& h : c.planes) CHECK(!evaluate(h, *o.vertex).is_zero());
    if (!o.used_fallback) ++found_without_fallback;
  }
  CHECK(found_without_fallback > 0);  // the pipeline itself succeeds sometimes
}
