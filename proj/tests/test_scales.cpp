#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "cubecover/rng.hpp"
#include "cubecover/scales.hpp"

using namespace cubecover;

namespace {

Rat R(const char* s) { return Rat::parse(s); }

// test-side oracle: exhaustive search over ordered assignments of the
// support coordinates to S groups, all groups non-empty, decay checked
bool brute_force_exists(const RatVec& v, int s_count, const Rat& c0) {
  std::vector<int> support;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) support.push_back(static_cast<int>(j));
  if (static_cast<int>(support.size()) < s_count) return false;
  Rat c0_sq = square(c0);
  std::vector<Rat> masses(static_cast<std::size_t>(s_count), Rat(0));
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == support.size()) {
      for (const Rat& m : masses)
        if (m.is_zero()) return false;
      for (std::size_t s = 0; s + 1 < masses.size(); ++s)
        if (masses[s] < c0_sq * masses[s + 1]) return false;
      return true;
    }
    Rat sq = square(v[static_cast<std::size_t>(support[pos])]);
    for (int g = 0; g < s_count; ++g) {
      masses[static_cast<std::size_t>(g)] += sq;
      if (rec(pos + 1)) return true;
      masses[static_cast<std::size_t>(g)] -= sq;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_CASE("two well separated coordinates split cleanly") {
  auto part = find_scales({Rat(8), Rat(1)}, 2, Rat(2));
  REQUIRE(part.has_value());
  CHECK(part->groups.size() == 2);
  CHECK(part->groups[0] == std::vector<int>{0});
  CHECK(part->groups[1] == std::vector<int>{1});
  CHECK(part->smallest_scale_sq() == Rat(1));
  std::string why;
  CHECK(validate_scale_partition({Rat(8), Rat(1)}, *part, 2, Rat(2), &why));
}

TEST_CASE("equal coordinates admit no gap") {
  CHECK(!find_scales({Rat(1), Rat(1)}, 2, Rat(2)).has_value());
}

TEST_CASE("the worked three-scale vector") {
  RatVec v{Rat(100), Rat(100), Rat(1), Rat(1), R("1/100")};
  auto part = find_scales(v, 3, Rat(5));
  REQUIRE(part.has_value());
  std::string why;
  CHECK(validate_scale_partition(v, *part, 3, Rat(5), &why));
  CHECK(brute_force_exists(v, 3, Rat(5)));
}

TEST_CASE("a split that only a non-contiguous grouping satisfies") {
  // masses (961/64, 4, 1, 1): {v0,v3},{v1},{v2} works, no sorted-contiguous
  // split does
  RatVec v{R("31/8"), Rat(2), Rat(1), Rat(1)};
  CHECK(brute_force_exists(v, 3, Rat(2)));
  auto part = find_scales(v, 3, Rat(2));
  REQUIRE(part.has_value());
  std::string why;
  CHECK(validate_scale_partition(v, *part, 3, Rat(2), &why));
}

TEST_CASE("detector agrees with the exhaustive oracle on small supports") {
  SplitMix64 rng(99);
  const long mags[] = {0, 1, 2, 3, 4, 8, 16, 100};
  for (int t = 0; t < 400; ++t) {
    int n = 2 + static_cast<int>(rng.next() % 5);  // support <= 6
    RatVec v;
    for (int j = 0; j < n; ++j) {
      long m = mags[rng.next() % 8];
      v.push_back(Rat(rand_sign(rng) > 0 ? m : -m));
    }
    int s_count = 2 + static_cast<int>(rng.next() % 2);
    Rat c0 = Rat(2 + static_cast<long>(rng.next() % 2));
    bool want = brute_force_exists(v, s_count, c0);
    auto got = find_scales(v, s_count, c0);
    CAPTURE(t);
    CHECK(got.has_value() == want);
    if (got) {
      std::string why;
      CHECK(validate_scale_partition(v, *got, s_count, c0, &why));
    }
  }
}

TEST_CASE("zero coordinates ride along without affecting masses") {
  RatVec v{Rat(0), Rat(8), Rat(0), Rat(1)};
  auto part = find_scales(v, 2, Rat(2));
  REQUIRE(part.has_value());
  std::string why;
  CHECK(validate_scale_partition(v, *part, 2, Rat(2), &why));
  // zeros are attached to the smallest scale
  const auto& last = part->smallest_scale_coords();
  CHECK(std::count(last.begin(), last.end(), 0) == 1);
  CHECK(std::count(last.begin(), last.end(), 2) == 1);
}

TEST_CASE("validator rejects corrupted partitions") {
  RatVec v{Rat(8), Rat(1)};
  auto part = find_scales(v, 2, Rat(2));
  REQUIRE(part.has_value());

  ScalePartition overlap = *part;
  overlap.groups[1].push_back(0);
  overlap.group_mass[1] += Rat(64);
  CHECK(!validate_scale_partition(v, overlap, 2, Rat(2)));

  ScalePartition wrong_mass = *part;
  wrong_mass.group_mass[0] = Rat(63);
  CHECK(!validate_scale_partition(v, wrong_mass, 2, Rat(2)));

  ScalePartition bad_decay = *part;
  std::swap(bad_decay.groups[0], bad_decay.groups[1]);
  std::swap(bad_decay.group_mass[0], bad_decay.group_mass[1]);
  CHECK(!validate_scale_partition(v, bad_decay, 2, Rat(2)));

  CHECK(!validate_scale_partition(v, *part, 3, Rat(2)));
}
