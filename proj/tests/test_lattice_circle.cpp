#include "squarelab/lattice_circle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "squarelab/core_arith.hpp"
#include "squarelab/int_types.hpp"

using namespace squarelab;

namespace {

// Independent enumeration: scan x and test y^2 = M - x^2 for squareness.
std::vector<std::pair<long, long>> brute_reps(long m) {
  std::vector<std::pair<long, long>> pts;
  long r = static_cast<long>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  for (long x = -r; x <= r; ++x) {
    long y2 = m - x * x;
    long y = static_cast<long>(std::sqrt(static_cast<double>(y2)));
    while (y * y > y2) --y;
    while ((y + 1) * (y + 1) <= y2) ++y;
    if (y * y == y2) {
      pts.push_back({x, y});
      if (y != 0) pts.push_back({x, -y});
    }
  }
  auto quad = [](long x, long y) {
    if (x > 0 && y >= 0) return 0;
    if (x <= 0 && y > 0) return 1;
    if (x < 0 && y <= 0) return 2;
    return 3;
  };
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    int qa = quad(a.first, a.second), qb = quad(b.first, b.second);
    if (qa != qb) return qa < qb;
    return a.first * b.second - a.second * b.first > 0;
  });
  return pts;
}

void expect_xy(const std::vector<CirclePoint>& got,
               const std::vector<std::pair<long, long>>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(got[i].x == make_int(want[i].first));
    CHECK(got[i].y == make_int(want[i].second));
  }
}

bool contains_xy(const std::vector<CirclePoint>& pts, long x, long y) {
  for (const CirclePoint& p : pts)
    if (p.x == make_int(x) && p.y == make_int(y)) return true;
  return false;
}

bool contains_point(const std::vector<CirclePoint>& pts, const Int& x, const Int& y) {
  for (const CirclePoint& p : pts)
    if (p.x == x && p.y == y) return true;
  return false;
}

// Invariant of the circle's symmetry group (rotations by 90 degrees and
// reflections): each point becomes (min(|x|,|y|), max(|x|,|y|)), sorted.
std::vector<std::pair<Int, Int>> norm_window(const std::vector<CirclePoint>& pts) {
  std::vector<std::pair<Int, Int>> out;
  for (const CirclePoint& p : pts) {
    Int ax = abs(p.x), ay = abs(p.y);
    if (ax > ay) std::swap(ax, ay);
    out.push_back({ax, ay});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Int, Int>> norm_pairs(const std::vector<std::pair<long, long>>& v) {
  std::vector<std::pair<Int, Int>> out;
  for (auto [x, y] : v) out.push_back({make_int(x), make_int(y)});
  std::sort(out.begin(), out.end());
  return out;
}

Rat frac(long num, unsigned long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("two-square representations: worked examples") {
  expect_xy(two_square_reps(make_int(25)),
            {{5, 0},
             {4, 3},
             {3, 4},
             {0, 5},
             {-3, 4},
             {-4, 3},
             {-5, 0},
             {-4, -3},
             {-3, -4},
             {0, -5},
             {3, -4},
             {4, -3}});
  expect_xy(two_square_reps(make_int(1)), {{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  expect_xy(two_square_reps(make_int(2)), {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  expect_xy(two_square_reps(make_int(9)), {{3, 0}, {0, 3}, {-3, 0}, {0, -3}});
  CHECK(two_square_reps(make_int(3)).empty());
  CHECK(two_square_reps(make_int(21)).empty());
  CHECK(two_square_reps(make_int(7 * 7 * 7)).empty());

  std::vector<CirclePoint> big = two_square_reps(make_int(1105));
  CHECK(big.size() == 32);
  CHECK(contains_xy(big, 31, 12));
  CHECK(contains_xy(big, 32, 9));
  CHECK(contains_xy(big, 33, 4));
  CHECK(contains_xy(big, 24, 23));
  for (const CirclePoint& p : big) {
    CHECK(p.x * p.x + p.y * p.y == make_int(1105));
    CHECK(p.M == make_int(1105));
  }

  // A modulus with a large inert prime squared exercises the big-integer path.
  Int q = int_from_string("1000000007");
  Int m_big = 25 * 13 * 17 * q * q;
  std::vector<CirclePoint> huge = two_square_reps(m_big);
  CHECK(huge.size() == 48);
  for (const CirclePoint& p : huge) CHECK(p.x * p.x + p.y * p.y == m_big);

  CHECK_THROWS_AS((void)two_square_reps(make_int(0)), std::invalid_argument);
  CHECK_THROWS_AS((void)two_square_reps(make_int(-5)), std::invalid_argument);
}

TEST_CASE("two-square representations: exhaustive brute-force sweep") {
  for (long m = 1; m <= 3000; ++m) {
    std::vector<CirclePoint> got = two_square_reps(make_int(m));
    std::vector<std::pair<long, long>> want = brute_reps(m);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      REQUIRE(got[i].x == make_int(want[i].first));
      REQUIRE(got[i].y == make_int(want[i].second));
    }

    // Multiplicative count: 4 * prod(e_i + 1) over primes 1 mod 4, and zero
    // whenever some prime 3 mod 4 appears to an odd power.
    std::size_t predicted = 4;
    for (const auto& [p, e] : factorize(make_int(m))) {
      unsigned long rem = mpz_fdiv_ui(p.get_mpz_t(), 4);
      if (rem == 3 && e % 2 != 0) {
        predicted = 0;
        break;
      }
      if (rem == 1) predicted *= e + 1;
    }
    REQUIRE(got.size() == predicted);
  }
}

TEST_CASE("densest arc cluster: worked examples") {
  ArcCluster tight = max_arc_cluster(make_int(25), 0.1);
  CHECK(tight.M == make_int(25));
  expect_xy(tight.points, {{5, 0}});
  CHECK(tight.arc_length == 0.0);

  ArcCluster triple = max_arc_cluster(make_int(1105), 8.3);
  expect_xy(triple.points, {{33, 4}, {32, 9}, {31, 12}});
  CHECK(triple.arc_length == doctest::Approx(8.267503119792).epsilon(1e-9));

  ArcCluster whole = max_arc_cluster(make_int(2), 10.0);
  expect_xy(whole.points, {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
  CHECK(whole.arc_length == doctest::Approx(6.664324407237549).epsilon(1e-9));

  ArcCluster pair = max_arc_cluster(make_int(5525), 5.0);
  expect_xy(pair.points, {{71, 22}, {70, 25}});
  CHECK(pair.arc_length == doctest::Approx(3.1625161912193853).epsilon(1e-9));

  ArcCluster none = max_arc_cluster(make_int(3), 5.0);
  CHECK(none.M == make_int(3));
  CHECK(none.points.empty());
  CHECK(none.arc_length == 0.0);

  CHECK_THROWS_AS((void)max_arc_cluster(make_int(25), 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)max_arc_cluster(make_int(25), -1.0), std::invalid_argument);
}

TEST_CASE("densest arc cluster: counts grow with the allowed arc length") {
  const double lengths[] = {1, 2, 5, 10, 20, 500};
  const std::size_t counts[] = {1, 1, 2, 2, 4, 48};
  std::size_t prev = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    ArcCluster c = max_arc_cluster(make_int(5525), lengths[i]);
    CHECK(c.points.size() == counts[i]);
    CHECK(c.points.size() >= prev);
    prev = c.points.size();
    std::vector<CirclePoint> all = two_square_reps(make_int(5525));
    for (const CirclePoint& p : c.points) {
      CHECK(p.x * p.x + p.y * p.y == make_int(5525));
      CHECK(contains_point(all, p.x, p.y));
    }
    CHECK(c.arc_length <= lengths[i] + 1e-9);
  }
}

TEST_CASE("arc bound verification: exhaustive scans stay above the threshold") {
  ArcBoundReport r2 = arc_bound_verify(1000, 2);
  CHECK(r2.ok);
  CHECK(r2.threshold_exponent == frac(1, 3));
  CHECK(r2.clusters_checked == 3148);
  CHECK(r2.violations == 0);
  CHECK(r2.ambiguous == 0);
  CHECK(r2.worst.M == make_int(725));
  CHECK(r2.worst_exponent == doctest::Approx(0.617530080503).epsilon(1e-9));
  CHECK(r2.worst.arc_length == doctest::Approx(7.641390246904).epsilon(1e-9));
  CHECK(r2.worst.points.size() == 3);
  CHECK(norm_window(r2.worst.points) == norm_pairs({{7, 26}, {10, 25}, {14, 23}}));

  ArcBoundReport r3 = arc_bound_verify(1000, 3);
  CHECK(r3.ok);
  CHECK(r3.threshold_exponent == frac(1, 3));
  CHECK(r3.clusters_checked == 3148);
  CHECK(r3.violations == 0);
  CHECK(r3.ambiguous == 0);
  CHECK(r3.worst.M == make_int(793));
  CHECK(r3.worst_exponent == doctest::Approx(0.834790378946).epsilon(1e-9));
  CHECK(r3.worst.arc_length == doctest::Approx(16.223430078303).epsilon(1e-9));
  CHECK(norm_window(r3.worst.points) == norm_pairs({{3, 28}, {3, 28}, {8, 27}, {8, 27}}));

  ArcBoundReport r5 = arc_bound_verify(1000, 5);
  CHECK(r5.ok);
  CHECK(r5.threshold_exponent == frac(2, 5));
  CHECK(r5.clusters_checked == 3000);
  CHECK(r5.violations == 0);
  CHECK(r5.ambiguous == 0);
  CHECK(r5.worst.M == make_int(725));
  CHECK(r5.worst_exponent == doctest::Approx(1.013310326834).epsilon(1e-9));
  CHECK(norm_window(r5.worst.points) ==
        norm_pairs({{7, 26}, {7, 26}, {10, 25}, {10, 25}, {14, 23}, {14, 23}}));

  ArcBoundReport r4 = arc_bound_verify(10000, 4);
  CHECK(r4.ok);
  CHECK(r4.threshold_exponent == frac(2, 5));
  CHECK(r4.clusters_checked == 31016);
  CHECK(r4.violations == 0);
  CHECK(r4.ambiguous == 0);
  CHECK(r4.worst.M == make_int(5525));
  CHECK(r4.worst_exponent == doctest::Approx(0.808043291796).epsilon(1e-9));
  CHECK(r4.worst.arc_length == doctest::Approx(32.507475822657).epsilon(1e-9));
  CHECK(r4.worst.points.size() == 5);
  CHECK(norm_window(r4.worst.points) ==
        norm_pairs({{7, 74}, {7, 74}, {14, 73}, {22, 71}, {25, 70}}));
  for (const CirclePoint& p : r4.worst.points) CHECK(p.x * p.x + p.y * p.y == make_int(5525));
}

TEST_CASE("arc bound verification: argument guards and thread determinism") {
  CHECK_THROWS_AS((void)arc_bound_verify(1000, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)arc_bound_verify(1000, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)arc_bound_verify(1, 3), std::invalid_argument);

  ArcBoundReport a = arc_bound_verify(500, 3, 1);
  ArcBoundReport b = arc_bound_verify(500, 3, 4);
  CHECK(a.clusters_checked == 1580);
  CHECK(a.worst.M == make_int(325));
  CHECK(a.worst_exponent == doctest::Approx(0.847564020355).epsilon(1e-9));
  CHECK(a.clusters_checked == b.clusters_checked);
  CHECK(a.violations == b.violations);
  CHECK(a.ambiguous == b.ambiguous);
  CHECK(a.worst.M == b.worst.M);
  CHECK(a.worst_exponent == b.worst_exponent);
  CHECK(a.worst.arc_length == b.worst.arc_length);
  REQUIRE(a.worst.points.size() == b.worst.points.size());
  for (std::size_t i = 0; i < a.worst.points.size(); ++i) CHECK(a.worst.points[i] == b.worst.points[i]);
}

TEST_CASE("point families: adjacent pairs sit at unit-scale separation") {
  FamilyReport f = family_points(FamilyKind::pair, 5);
  CHECK(f.M == make_int(61));
  expect_xy(f.points, {{5, 6}, {6, 5}});
  CHECK(f.extreme_separation == doctest::Approx(std::sqrt(2.0)));
  CHECK(f.model_length == doctest::Approx(std::sqrt(2.0)));

  FamilyReport g = family_points(FamilyKind::pair, 1);
  CHECK(g.M == make_int(5));
  expect_xy(g.points, {{1, 2}, {2, 1}});

  CHECK_THROWS_AS((void)family_points(FamilyKind::pair, 0), std::invalid_argument);
}

TEST_CASE("point families: aligned triples track the cube-root model") {
  FamilyReport f = family_points(FamilyKind::triple, 2);
  CHECK(f.M == make_int(1105));
  expect_xy(f.points, {{31, 12}, {32, 9}, {33, 4}});
  CHECK(f.extreme_separation == doctest::Approx(std::sqrt(68.0)));
  CHECK(f.extreme_separation / f.model_length == doctest::Approx(1.0177803983889584).epsilon(1e-9));

  std::vector<CirclePoint> all = two_square_reps(f.M);
  for (const CirclePoint& p : f.points) CHECK(contains_point(all, p.x, p.y));

  CHECK(family_points(FamilyKind::triple, 5).extreme_separation /
            family_points(FamilyKind::triple, 5).model_length ==
        doctest::Approx(1.0032554109925815).epsilon(1e-9));
  FamilyReport big = family_points(FamilyKind::triple, 50);
  CHECK(big.extreme_separation / big.model_length ==
        doctest::Approx(1.0000333255553955).epsilon(1e-9));
}

TEST_CASE("point families: Fibonacci quadruples stay on integer circles") {
  FamilyReport f1 = family_points(FamilyKind::quad_fibonacci, 1);
  CHECK(f1.M == make_int(5));
  expect_xy(f1.points, {{-1, 2}, {2, 1}, {2, -1}, {1, -2}});
  CHECK(f1.extreme_separation / f1.model_length ==
        doctest::Approx(0.7786740319764839).epsilon(1e-6));

  FamilyReport f2 = family_points(FamilyKind::quad_fibonacci, 2);
  CHECK(f2.M == make_int(25));
  expect_xy(f2.points, {{4, -3}, {5, 0}, {4, 3}, {3, 4}});

  FamilyReport f3 = family_points(FamilyKind::quad_fibonacci, 3);
  CHECK(f3.M == make_int(325));
  expect_xy(f3.points, {{15, 10}, {17, 6}, {18, 1}, {18, -1}});
  CHECK(f3.extreme_separation / f3.model_length ==
        doctest::Approx(0.990056875).epsilon(1e-6));

  for (std::uint64_t n = 1; n <= 40; ++n) {
    FamilyReport f;
    REQUIRE_NOTHROW(f = family_points(FamilyKind::quad_fibonacci, n));
    REQUIRE(f.points.size() == 4);
    for (const CirclePoint& p : f.points) REQUIRE(p.x * p.x + p.y * p.y == f.M);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) REQUIRE_FALSE(f.points[i] == f.points[j]);
    double ratio = f.extreme_separation / f.model_length;
    if (n >= 4) CHECK(ratio == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(ratio > 0.77);
    CHECK(ratio < 1.000001);
  }

  CHECK_THROWS_AS((void)family_points(FamilyKind::quad_fibonacci, 0), std::invalid_argument);
}

TEST_CASE("rotation bridge: clusters transport exactly to scaled circles") {
  // Multiplying every point of a cluster by the conjugate of its first point
  // rotates the window to sit near angle zero on the circle of radius M; a
  // further twist by (1, 1) moves it to the circle of 2 M^2. Chord lengths
  // scale by sqrt(M) and sqrt(2 M) exactly, so everything can be checked in
  // integers.
  const Int m = make_int(1105);
  ArcCluster c = max_arc_cluster(m, 8.3);
  REQUIRE(c.points.size() == 3);
  const CirclePoint& a0 = c.points.front();

  std::vector<CirclePoint> on_m2 = two_square_reps(Int(m * m));
  std::vector<CirclePoint> on_2m2 = two_square_reps(Int(2 * m * m));
  CHECK(on_m2.size() == 108);
  CHECK(on_2m2.size() == 108);

  std::vector<std::pair<Int, Int>> beta;
  for (const CirclePoint& p : c.points) {
    Int bx = p.x * a0.x + p.y * a0.y;
    Int by = p.y * a0.x - p.x * a0.y;
    CHECK(bx * bx + by * by == m * m);
    CHECK(contains_point(on_m2, bx, by));
    Int gx = bx - by, gy = bx + by;
    CHECK(gx * gx + gy * gy == 2 * m * m);
    CHECK(contains_point(on_2m2, gx, gy));
    beta.push_back({bx, by});
  }
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::size_t j = i + 1; j < beta.size(); ++j) {
      Int orig = (c.points[i].x - c.points[j].x) * (c.points[i].x - c.points[j].x) +
                 (c.points[i].y - c.points[j].y) * (c.points[i].y - c.points[j].y);
      Int mapped = (beta[i].first - beta[j].first) * (beta[i].first - beta[j].first) +
                   (beta[i].second - beta[j].second) * (beta[i].second - beta[j].second);
      CHECK(mapped == m * orig);
      Int gi_x = beta[i].first - beta[i].second, gi_y = beta[i].first + beta[i].second;
      Int gj_x = beta[j].first - beta[j].second, gj_y = beta[j].first + beta[j].second;
      Int twisted = (gi_x - gj_x) * (gi_x - gj_x) + (gi_y - gj_y) * (gi_y - gj_y);
      CHECK(twisted == 2 * m * orig);
    }
}
