#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "cubecover/cube.hpp"
#include "cubecover/hyperplane.hpp"
#include "cubecover/linalg.hpp"
#include "cubecover/params.hpp"
#include "cubecover/powers.hpp"
#include "cubecover/rat.hpp"
#include "cubecover/rng.hpp"

using namespace cubecover;

namespace {

Rat R(const char* s) { return Rat::parse(s); }

RatVec vec(std::initializer_list<const char*> xs) {
  RatVec v;
  for (const char* s : xs) v.push_back(R(s));
  return v;
}

Vertex vx(std::initializer_list<int> signs) {
  Vertex v;
  for (int s : signs) v.signs.push_back(static_cast<std::int8_t>(s));
  v.n = static_cast<int>(v.signs.size());
  return v;
}

}  // namespace

TEST_CASE("rat canonical form and parsing") {
  CHECK(R("4/6") == R("2/3"));
  CHECK(R("4/6").num() == 2);
  CHECK(R("4/6").den() == 3);
  CHECK(R("-4/6").to_string() == "-2/3");
  CHECK(R("7").to_string() == "7");
  CHECK(R("0.52") == Rat(13, 25));
  CHECK(R("0.1961") == Rat(1961, 10000));
  CHECK_THROWS(R("1/0"));
  CHECK_THROWS(R("1.5e3"));
  CHECK_THROWS(R(""));
  CHECK_THROWS(R("3/-4"));
  CHECK(Rat::is_fraction_token("-12/5"));
  CHECK(!Rat::is_fraction_token("0.5"));
  CHECK(!Rat::is_fraction_token("a"));
}

TEST_CASE("rat arithmetic round-trips on random values") {
  SplitMix64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Int an(static_cast<long>(rng.next() % 1'000'000)), ad(1 + static_cast<long>(rng.next() % 999));
    Int bn(static_cast<long>(rng.next() % 1'000'000)), bd(1 + static_cast<long>(rng.next() % 999));
    Rat a(an, ad), b(bn + 1, bd);
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
  }
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("evaluate on the worked instances") {
  // {z1 = 1} evaluates to zero on any all-plus-start vertex
  Hyperplane h1{vec({"1", "0", "0"}), R("1")};
  CHECK(evaluate(h1, vx({1, 1, 1})) == Rat(0));
  CHECK(evaluate(h1, vx({1, -1, 1})) == Rat(0));

  Hyperplane h2{vec({"1", "0", "0"}), R("1")};
  CHECK(evaluate(h2, vx({-1, 1, 1})) == Rat(-2));

  Hyperplane h3{vec({"1", "1"}), R("0")};
  CHECK(evaluate(h3, vx({1, 1})) == Rat(2));

  CHECK_THROWS(evaluate(h3, vx({1, 1, 1})));
}

TEST_CASE("evaluate is linear against an independent recomputation") {
  SplitMix64 rng(11);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng.next() % 8);
    Hyperplane h;
    for (int j = 0; j < n; ++j)
      h.normal.push_back(Rat(static_cast<long>(rng.next() % 19) - 9, 1 + static_cast<long>(rng.next() % 7)));
    h.offset = Rat(static_cast<long>(rng.next() % 9) - 4);
    Vertex x;
    x.n = n;
    for (int j = 0; j < n; ++j) x.signs.push_back(rand_sign(rng));
    Rat expect = -h.offset;
    for (int j = 0; j < n; ++j) expect += Rat(x.signs[static_cast<std::size_t>(j)]) * h.normal[static_cast<std::size_t>(j)];
    CHECK(evaluate(h, x) == expect);
  }
}

TEST_CASE("sparsity") {
  CHECK(sparsity(vec({"0", "0", "0"})) == 0);
  CHECK(sparsity(vec({"1", "0", "-3/2"})) == 2);
}

TEST_CASE("cube enumeration order and counts") {
  // lexicographic with -1 < +1, coordinate 0 most significant
  CHECK(vertex_from_index(2, 0) == vx({-1, -1}));
  CHECK(vertex_from_index(2, 1) == vx({-1, 1}));
  CHECK(vertex_from_index(2, 2) == vx({1, -1}));
  CHECK(vertex_from_index(2, 3) == vx({1, 1}));

  int count = 0;
  enumerate_cube(1, [&](const Vertex&) { ++count; });
  CHECK(count == 2);

  std::set<std::vector<std::int8_t>> seen;
  enumerate_cube(3, [&](const Vertex& v) { seen.insert(v.signs); });
  CHECK(seen.size() == 8);

  for (int n = 1; n <= 16; ++n) {
    std::vector<bool> hit(std::size_t{1} << n, false);
    std::uint64_t total = 0, dup = 0;
    enumerate_cube(n, [&](const Vertex& v) {
      std::uint64_t idx = index_of_vertex(v);
      if (hit[idx]) ++dup;
      hit[idx] = true;
      ++total;
    });
    CHECK(total == (std::uint64_t{1} << n));
    CHECK(dup == 0);
  }
  CHECK_THROWS(enumerate_cube(31, [](const Vertex&) {}));
}

TEST_CASE("cube enumeration at n = 20 has the full count and no repeats") {
  std::vector<bool> hit(std::size_t{1} << 20, false);
  std::uint64_t total = 0;
  bool dup = false;
  enumerate_cube(20, [&](const Vertex& v) {
    std::uint64_t idx = index_of_vertex(v);
    dup = dup || hit[idx];
    hit[idx] = true;
    ++total;
  });
  CHECK(total == 1'048'576);
  CHECK(!dup);
}

TEST_CASE("directed power bounds bracket the true value") {
  // oracle: r = lower bound of n^(p/q) iff r^q <= n^p, and (upper)^q >= n^p
  auto check_bracket = [](long n, const char* e) {
    Rat expo = R(e);
    Rat lo = pow_bound(Int(n), expo, Round::Down);
    Rat hi = pow_bound(Int(n), expo, Round::Up);
    CHECK(lo <= hi);
    unsigned long q = expo.den().get_ui();
    unsigned long p = expo.num().get_ui();
    Int np;
    mpz_pow_ui(np.get_mpz_t(), Int(n).get_mpz_t(), p);
    Int lo_num_q, lo_den_q;
    mpz_pow_ui(lo_num_q.get_mpz_t(), lo.num().get_mpz_t(), q);
    mpz_pow_ui(lo_den_q.get_mpz_t(), lo.den().get_mpz_t(), q);
    CHECK(lo_num_q <= np * lo_den_q);
    Int hi_num_q, hi_den_q;
    mpz_pow_ui(hi_num_q.get_mpz_t(), hi.num().get_mpz_t(), q);
    mpz_pow_ui(hi_den_q.get_mpz_t(), hi.den().get_mpz_t(), q);
    CHECK(hi_num_q >= np * hi_den_q);
  };
  check_bracket(2, "0.52");
  check_bracket(256, "0.196");
  check_bracket(1000, "0.7171");
  check_bracket(17, "0.001");

  // exact powers are exact in both directions
  CHECK(pow_bound(Int(16), R("1/2"), Round::Down) == Rat(4));
  CHECK(pow_bound(Int(16), R("1/2"), Round::Up) == Rat(4));
  CHECK(pow_bound(Int(16), R("1/4"), Round::Up) == Rat(2));
}

TEST_CASE("exact comparisons against rational powers") {
  CHECK(cmp_rat_vs_pow(Rat(4), Int(16), R("1/2")) == 0);
  CHECK(cmp_rat_vs_pow(Rat(3), Int(16), R("1/2")) < 0);
  CHECK(cmp_rat_vs_pow(Rat(5), Int(16), R("1/2")) > 0);
  CHECK(cmp_rat_vs_pow(Rat(1, 4), Int(16), R("-1/2")) == 0);
  CHECK(cmp_rat_vs_pow(Rat(1, 5), Int(16), R("-1/2")) < 0);
  CHECK(cmp_rat_vs_pow(Rat(0), Int(7), R("0.3")) < 0);
  CHECK(floor_pow(Int(1000), R("0.5")) == 31);
  CHECK(floor_pow(Int(1024), R("0.5")) == 32);
  CHECK(floor_pow(Int(5), R("0.001")) == 1);
}

TEST_CASE("sqrt bounds") {
  Rat r(2);
  Rat lo = sqrt_bound(r, Round::Down), hi = sqrt_bound(r, Round::Up);
  CHECK(lo * lo <= r);
  CHECK(hi * hi >= r);
  CHECK(lo <= hi);
  CHECK(sqrt_bound(Rat(9, 4), Round::Down) == Rat(3, 2));
  CHECK(sqrt_bound(Rat(9, 4), Round::Up) == Rat(3, 2));
  CHECK(sqrt_bound(Rat(0), Round::Up) == Rat(0));
}

TEST_CASE("rng determinism and exact bernoulli") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));

  SplitMix64 rng(5);
  int plus = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (bernoulli(rng, Rat(1, 3))) ++plus;
  double freq = static_cast<double>(plus) / draws;
  CHECK(freq > 0.333 - 0.01);
  CHECK(freq < 0.333 + 0.01);

  SplitMix64 rng2(5);
  CHECK(bernoulli(rng2, Rat(1)) == true);
  CHECK(bernoulli(rng2, Rat(0)) == false);
  Int below = rand_below(rng2, Int("1000000000000000000000000"));
  CHECK(below >= 0);
  CHECK(below < Int("1000000000000000000000000"));
}

TEST_CASE("parameter validation rejects out-of-range knobs") {
  ParamSet p;
  p.validate();
  ParamSet bad = p;
  bad.alpha = Rat(1);
  CHECK_THROWS(bad.validate());
  bad = p;
  bad.c0 = Rat(1);
  CHECK_THROWS(bad.validate());
  bad = p;
  bad.scale_count_override = 1;
  CHECK_THROWS(bad.validate());
  bad = p;
  bad.divisor = Rat(0);
  CHECK_THROWS(bad.validate());

  // S = floor(n^0.001) collapses to one at desk scale, hence the override
  CHECK(p.scale_count(Int(1000)) == 1);
  p.scale_count_override = 3;
  CHECK(p.scale_count(Int(1000)) == 3);
}

TEST_CASE("nullspace vectors are orthogonal to the rows") {
  RatMat rows{vec({"1", "1", "0", "2"}), vec({"0", "1", "-1", "1/2"})};
  std::vector<int> cols{0, 1, 2, 3};
  auto d = nullspace_vector(rows, cols, 4);
  REQUIRE(d.has_value());
  CHECK(sparsity(*d) > 0);
  for (const RatVec& r : rows) CHECK(dot(r, *d) == Rat(0));

  // first non-zero entry positive
  for (const Rat& x : *d) {
    if (x.is_zero()) continue;
    CHECK(x.sign() > 0);
    break;
  }

  // full-rank restriction has no null vector
  RatMat id{vec({"1", "0"}), vec({"0", "1"})};
  CHECK(!nullspace_vector(id, {0, 1}, 2).has_value());
}

TEST_CASE("rank and affine rank") {
  CHECK(rank(RatMat{vec({"1", "2"}), vec({"2", "4"})}) == 1);
  CHECK(rank(RatMat{vec({"1", "0"}), vec({"0", "1"})}) == 2);
  // three square vertices affinely span the plane
  RatMat pts{vec({"1", "1"}), vec({"1", "-1"}), vec({"-1", "1"})};
  CHECK(affine_rank(pts) == 2);
  RatMat diag{vec({"1", "-1"}), vec({"-1", "1"})};
  CHECK(affine_rank(diag) == 1);
}
