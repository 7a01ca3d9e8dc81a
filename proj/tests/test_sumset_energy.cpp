#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "squarelab/core_arith.hpp"
#include "squarelab/sumset_energy.hpp"

using namespace squarelab;

namespace {

std::vector<Int> squares_up_to(long n) {
  std::vector<Int> v;
  for (long k = 1; k * k <= n; ++k) v.emplace_back(k * k);
  return v;
}

std::vector<Int> random_square_set(std::mt19937_64& rng, int size, long root_max) {
  std::uniform_int_distribution<long> dist(1, root_max);
  std::set<Int> s;
  while (static_cast<int>(s.size()) < size) {
    long r = dist(rng);
    s.insert(Int(r) * r);
  }
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("rep_profile ordered-pair counts") {
  auto p = rep_profile({1, 4, 9}, RepSign::sum);
  std::map<Int, Int> want{{2, 1}, {5, 2}, {8, 1}, {10, 2}, {13, 2}, {18, 1}};
  CHECK(p.counts == want);
  CHECK(p.ground_set_size == 3);

  auto single = rep_profile({5}, RepSign::sum);
  CHECK(single.counts == std::map<Int, Int>{{10, 1}});

  auto diff = rep_profile({1, 4, 9}, RepSign::difference);
  std::map<Int, Int> wantd{{0, 3},  {3, 1},  {-3, 1}, {5, 1},
                           {-5, 1}, {8, 1},  {-8, 1}};
  CHECK(diff.counts == wantd);

  CHECK_THROWS_AS(rep_profile({}, RepSign::sum), std::invalid_argument);
  CHECK_THROWS_AS(rep_profile({2, 2}, RepSign::sum), std::invalid_argument);
}

TEST_CASE("moments of the {1,4,9} profile") {
  auto p = rep_profile({1, 4, 9}, RepSign::sum);
  CHECK(energy_moment(p, 1) == 9);
  CHECK(energy_moment(p, 2) == 15);
  CHECK(binom_moment(p, 2) == 3);
  CHECK(binom_moment(p, 1) == 9);
  CHECK(binom_moment(p, 5) == 0);
  auto single = rep_profile({5}, RepSign::sum);
  CHECK(energy_moment(single, 5) == 1);
}

TEST_CASE("ordered-pair mass and energy identity on random square sets") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    auto E = random_square_set(rng, 50, 100'000);
    auto plus = rep_profile(E, RepSign::sum);
    auto minus = rep_profile(E, RepSign::difference);
    CHECK(energy_moment(plus, 1) == Int(50) * 50);
    CHECK(energy_moment(minus, 1) == Int(50) * 50);
    CHECK(minus.counts.at(0) >= 50);
    CHECK(energy_moment(plus, 2) == energy_moment(minus, 2));
  }
}

TEST_CASE("unordered-with-repetition convention") {
  auto p = rep_profile_unordered_sums({1, 4, 9});
  std::map<Int, Int> want{{2, 1}, {5, 1}, {8, 1}, {10, 1}, {13, 1}, {18, 1}};
  CHECK(p.counts == want);
  // 50 = 25 + 25 counts once under this convention.
  auto q = rep_profile_unordered_sums({16, 25, 34});
  CHECK(q.counts.at(50) == 2);  // 25+25 and 16+34
}

TEST_CASE("sumset_size") {
  CHECK(sumset_size({1, 4, 9}) == 6);
  CHECK(sumset_size({0}) == 1);
  // Squares of 1..10: 55 unordered pair sums with exactly three collisions
  // (50 = 1+49 = 25+25, 65 = 1+64 = 16+49, 85 = 4+81 = 36+49).
  CHECK(sumset_size(squares_up_to(100)) == 52);
}

TEST_CASE("binom_moment order 5 equals direct 5-subset enumeration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto E = random_square_set(rng, 12, 30);
    auto p = rep_profile(E, RepSign::sum);
    // Independent oracle: bucket ordered pairs by sum, then walk strictly
    // increasing index 5-tuples per bucket.
    std::map<Int, long> bucket;
    for (const Int& a : E)
      for (const Int& b : E) bucket[a + b] += 1;
    Int direct = 0;
    for (const auto& [n, r] : bucket) {
      if (r < 5) continue;
      long c = 0;
      for (long i1 = 0; i1 < r; ++i1)
        for (long i2 = i1 + 1; i2 < r; ++i2)
          for (long i3 = i2 + 1; i3 < r; ++i3)
            for (long i4 = i3 + 1; i4 < r; ++i4)
              for (long i5 = i4 + 1; i5 < r; ++i5) ++c;
      direct += c;
    }
    CHECK(binom_moment(p, 5) == direct);
  }
}

TEST_CASE("monotonicity under element insertion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto E = random_square_set(rng, 20, 500);
    auto bigger = E;
    Int extra = Int(1009) * 1009 + trial;  // outside the square set
    if (std::find(bigger.begin(), bigger.end(), extra) == bigger.end())
      bigger.push_back(extra);
    CHECK(sumset_size(bigger) >= sumset_size(E));
    CHECK(energy_moment(rep_profile(bigger, RepSign::sum), 2) >=
          energy_moment(rep_profile(E, RepSign::sum), 2));
  }
}

TEST_CASE("find_affine_cubes tiny instance") {
  auto cubes = find_affine_cubes({1, 2, 3, 4}, 2, Int(10));
  REQUIRE(cubes.size() == 1);
  CHECK(cubes[0].b0 == 1);
  CHECK(cubes[0].generators == std::vector<Int>{1, 2});

  CHECK(find_affine_cubes({1, 2, 3}, 2, Int(10)).empty());  // 2^d > |A|
  CHECK_THROWS_AS(find_affine_cubes({1, 20}, 2, Int(10)), std::invalid_argument);
}

TEST_CASE("find_affine_cubes over squares up to 625 matches brute force") {
  auto A = squares_up_to(625);
  auto cubes = find_affine_cubes(A, 2, Int(625));

  // Independent oracle: scan all ordered 4-tuples s0<s1<s2<s3 with s1-s0 =
  // s3-s2 (a parallelogram of squares).
  std::set<Int> members(A.begin(), A.end());
  std::set<AffineCube> oracle;
  for (const Int& s0 : A)
    for (const Int& s1 : A) {
      if (s1 <= s0) continue;
      for (const Int& s2 : A) {
        if (s2 <= s1) continue;
        Int s3 = s1 + s2 - s0;
        if (s3 > s2 && members.count(s3)) oracle.insert({s0, {s1 - s0, s2 - s0}});
      }
    }
  std::set<AffineCube> got(cubes.begin(), cubes.end());
  CHECK(got == oracle);
  CHECK(cubes.size() == 48);
  CHECK(got.count({Int(1), {Int(48), Int(120)}}) == 1);
  CHECK(got.count({Int(9), {Int(40), Int(72)}}) == 1);
  // 49 + 272 = 321 is not a perfect square, so this is NOT a cube of squares.
  CHECK(got.count({Int(49), {Int(240), Int(272)}}) == 0);

  // Every emitted cube re-validates member-by-member.
  for (const auto& c : cubes) {
    std::vector<Int> sums{c.b0, c.b0 + c.generators[0], c.b0 + c.generators[1],
                          c.b0 + c.generators[0] + c.generators[1]};
    std::set<Int> uniq(sums.begin(), sums.end());
    CHECK(uniq.size() == 4);
    for (const Int& v : sums) {
      CHECK(members.count(v) == 1);
      CHECK(is_square(v).has_value());
    }
  }
}

TEST_CASE("find_affine_cubes dimension 3 agrees with validated extension") {
  // A small set engineered to contain a 3-cube: full subset-sum lattice.
  std::vector<Int> A;
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      for (int k = 0; k <= 1; ++k) A.push_back(Int(10 + i + 3 * j + 9 * k));
  std::sort(A.begin(), A.end());
  auto cubes = find_affine_cubes(A, 3, Int(100));
  bool found = false;
  for (const auto& c : cubes)
    if (c.b0 == 10 && c.generators == std::vector<Int>{1, 3, 9}) found = true;
  CHECK(found);
  // All results re-validate: 8 distinct subset sums inside A.
  std::set<Int> members(A.begin(), A.end());
  for (const auto& c : cubes) {
    std::set<Int> sums;
    for (int mask = 0; mask < 8; ++mask) {
      Int v = c.b0;
      for (int bit = 0; bit < 3; ++bit)
        if (mask & (1 << bit)) v += c.generators[bit];
      CHECK(members.count(v) == 1);
      sums.insert(v);
    }
    CHECK(sums.size() == 8);
  }
}

TEST_CASE("grid_stats") {
  std::vector<Int> A{1, 2};
  std::vector<std::pair<Int, Int>> G{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  auto s = grid_stats(A, G);
  CHECK(s.sum_count == 3);
  CHECK(s.diff_count == 3);
  CHECK(s.prod_count == 3);
  CHECK(s.pair_count == 4);

  std::vector<Int> B{3, 5, 11};
  std::vector<std::pair<Int, Int>> diag{{3, 3}, {5, 5}, {11, 11}};
  auto d = grid_stats(B, diag);
  CHECK(d.sum_count == 3);
  CHECK(d.diff_count == 1);
  CHECK(d.prod_count == 3);

  auto one = grid_stats(B, {{3, 5}});
  CHECK(one.sum_count == 1);
  CHECK(one.diff_count == 1);
  CHECK(one.prod_count == 1);

  CHECK_THROWS_AS(grid_stats(B, {{3, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(grid_stats(B, {}), std::invalid_argument);
}
