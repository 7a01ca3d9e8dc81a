#include "squarelab/gap_elliptic.hpp"

#include <doctest.h>

#include <random>
#include <vector>

#include "squarelab/ap_squares.hpp"
#include "squarelab/core_arith.hpp"

using namespace squarelab;

namespace {

Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool on_curve(const ECPoint& p) {
  return p.at_infinity || p.curve_delta * p.y * p.y == p.x * p.x * p.x - p.x;
}

}  // namespace

TEST_CASE("square progressions: worked examples and exact identities") {
  Ap3Params a = ap3_squares(frac(1, 1), frac(2, 1));
  CHECK(a.x == frac(-1, 1));
  CHECK(a.y == frac(5, 1));
  CHECK(a.z == frac(7, 1));
  CHECK(a.x * a.x == frac(1, 1));
  CHECK(a.y * a.y == frac(25, 1));
  CHECK(a.z * a.z == frac(49, 1));
  CHECK(a.delta == frac(24, 1));
  CHECK_FALSE(a.degenerate);

  Ap3Params b = ap3_squares(frac(1, 1), frac(1, 1));
  CHECK(b.degenerate);
  CHECK(b.delta == 0);
  CHECK(ap3_squares(frac(1, 1), frac(0, 1)).degenerate);
  CHECK(ap3_squares(frac(1, 1), frac(-1, 1)).degenerate);

  Ap3Params c = ap3_squares(frac(1, 2), frac(3, 1));
  CHECK(c.x == frac(1, 1));
  CHECK(c.y == frac(5, 1));
  CHECK(c.z == frac(7, 1));
  CHECK(c.delta == frac(24, 1));

  CHECK_THROWS_AS((void)ap3_squares(frac(0, 1), frac(2, 1)), std::invalid_argument);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  for (int trial = 0; trial < 80; ++trial) {
    long rn = num(rng);
    if (rn == 0) rn = 1;
    Rat r = frac(rn, den(rng)), t = frac(num(rng), den(rng));
    Ap3Params p = ap3_squares(r, t);
    CHECK(p.x * p.x + p.z * p.z == 2 * p.y * p.y);
    CHECK(p.y * p.y - p.x * p.x == p.delta);
    CHECK(p.delta == 4 * r * r * (t * t * t - t));
    CHECK(p.degenerate == (p.delta == 0));
  }
}

TEST_CASE("curve points: validated construction and tangent doubling") {
  ECPoint p = ec_point(frac(24, 1), frac(2, 1), frac(1, 2));
  CHECK_FALSE(p.at_infinity);
  CHECK(on_curve(p));

  ECPoint d = ec_double(p);
  CHECK(d.x == frac(25, 24));
  CHECK(d.y == frac(-35, 576));
  CHECK(on_curve(d));
  // The curve equation at the doubled point, written out exactly.
  CHECK(frac(24, 1) * d.y * d.y == frac(1225, 13824));
  CHECK(d.x * d.x * d.x - d.x == frac(1225, 13824));

  ECPoint q = ec_double(d);  // 4P satisfies the curve and doubling is add(P,P)
  CHECK(on_curve(q));
  CHECK(q == ec_add(d, d));

  for (long x0 : {0L, 1L, -1L})
    CHECK(ec_double(ec_point(frac(24, 1), frac(x0, 1), frac(0, 1))).at_infinity);
  CHECK(ec_double(ec_infinity(frac(24, 1))).at_infinity);

  CHECK_THROWS_AS((void)ec_point(frac(24, 1), frac(2, 1), frac(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)ec_point(frac(0, 1), frac(0, 1), frac(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)ec_infinity(frac(0, 1)), std::invalid_argument);
}

TEST_CASE("curve points: abelian group laws on sampled points") {
  // Seed points on four curves, each validated at construction.
  std::vector<ECPoint> seeds = {
      ec_point(frac(5, 1), frac(-4, 5), frac(6, 25)),
      ec_point(frac(6, 1), frac(-1, 2), frac(1, 4)),
      ec_point(frac(7, 1), frac(25, 7), frac(120, 49)),
      ec_point(frac(24, 1), frac(2, 1), frac(1, 2)),
  };
  std::size_t associativity_checks = 0;
  for (const ECPoint& seed : seeds) {
    ECPoint two = ec_double(seed);
    ECPoint three = ec_add(two, seed);
    ECPoint four = ec_double(two);
    std::vector<ECPoint> pool = {ec_infinity(seed.curve_delta), seed,        two,
                                 three,                         four,        ec_negate(seed),
                                 ec_negate(two)};
    for (const ECPoint& a : pool) {
      CHECK(on_curve(a));
      CHECK(ec_add(a, ec_infinity(seed.curve_delta)) == a);
      CHECK(ec_add(ec_infinity(seed.curve_delta), a) == a);
      CHECK(ec_add(a, ec_negate(a)).at_infinity);
      if (!a.at_infinity && a.y != 0) CHECK(ec_add(a, a) == ec_double(a));
      for (const ECPoint& b : pool) CHECK(ec_add(a, b) == ec_add(b, a));
    }
    for (const ECPoint& a : pool)
      for (const ECPoint& b : pool)
        for (const ECPoint& c : pool) {
          CHECK(ec_add(ec_add(a, b), c) == ec_add(a, ec_add(b, c)));
          ++associativity_checks;
        }
  }
  CHECK(associativity_checks >= 100);

  ECPoint p5 = ec_point(frac(5, 1), frac(-4, 5), frac(6, 25));
  ECPoint p24 = ec_point(frac(24, 1), frac(2, 1), frac(1, 2));
  CHECK_THROWS_AS((void)ec_add(p5, p24), std::invalid_argument);
}

TEST_CASE("progression-to-curve bridge: (t, 1/2r) sits on the delta curve") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
  int checked = 0;
  while (checked < 40) {
    long rn = num(rng);
    if (rn == 0) continue;
    Rat r = frac(rn, den(rng)), t = frac(num(rng), den(rng));
    Ap3Params p = ap3_squares(r, t);
    if (p.degenerate) continue;
    ECPoint pt = ec_point(p.delta, t, Rat(1 / (2 * r)));  // throws if off-curve
    ECPoint dbl = ec_double(pt);
    auto [t_next, r_next] = doubled_parameters(p);
    CHECK(dbl.x == t_next);
    CHECK(dbl.y == 1 / (2 * r_next));
    ++checked;
  }
}

TEST_CASE("two-row grids: doubling extends a progression to a shared difference") {
  Ap3Params a = ap3_squares(frac(1, 1), frac(2, 1));
  auto [t2, r2] = doubled_parameters(a);
  CHECK(t2 == frac(25, 24));
  CHECK(r2 == frac(-288, 35));

  GapGrid g = gap_2x3(frac(1, 1), frac(2, 1));
  CHECK(g.rows == 2);
  CHECK(g.cols == 3);
  CHECK(g.delta == frac(24, 1));
  CHECK(g.x0 == frac(1, 1));
  CHECK(g.entries[0][0] == frac(1, 1));
  CHECK(g.entries[0][1] == frac(25, 1));
  CHECK(g.entries[0][2] == frac(49, 1));
  CHECK(g.entries[1][0] == frac(1151, 70) * frac(1151, 70));
  CHECK(g.entries[1][1] == frac(1201, 70) * frac(1201, 70));
  CHECK(g.entries[1][2] == frac(1249, 70) * frac(1249, 70));
  CHECK(g.v == g.entries[1][0] - g.entries[0][0]);

  GapGrid h = gap_2x3(frac(1, 1), frac(3, 1));
  CHECK(h.delta == frac(96, 1));

  for (const GapGrid& grid : {g, h})
    for (const auto& row : grid.entries) {
      CHECK(row[1] - row[0] == grid.delta);
      CHECK(row[2] - row[1] == grid.delta);
      for (const Rat& e : row) CHECK(rational_square_root(e).has_value());
    }

  CHECK_THROWS_AS((void)gap_2x3(frac(1, 1), frac(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)gap_2x3(frac(1, 1), frac(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)gap_2x3(frac(1, 1), frac(-1, 1)), std::invalid_argument);
  CHECK_THROWS_AS((void)gap_2x3(frac(0, 1), frac(2, 1)), std::invalid_argument);
}

TEST_CASE("two-row grids: no row extends to four squares") {
  const std::pair<long, long> rts[] = {{2, 1}, {3, 1}, {5, 2}, {7, 1}, {4, 3}};
  for (auto [tn, td] : rts) {
    GapGrid g = gap_2x3(frac(1, 1), frac(tn, td));
    for (const auto& row : g.entries) {
      CHECK_FALSE(rational_square_root(Rat(row[0] - g.delta)).has_value());
      CHECK_FALSE(rational_square_root(Rat(row[2] + g.delta)).has_value());
    }
  }
  CHECK(fermat_four_term_check(10000).empty());
}

TEST_CASE("magic square view: all eight lines share the sum") {
  GapGrid base = make_gap_grid(frac(-3, 1), frac(1, 1), frac(2, 1), 3);  // center 0
  auto m = magic_square_view(base);
  CHECK(m[0][0] == frac(1, 1));
  CHECK(m[0][1] == frac(-3, 1));
  CHECK(m[0][2] == frac(2, 1));
  CHECK(m[1][0] == frac(1, 1));
  CHECK(m[1][1] == frac(0, 1));
  CHECK(m[1][2] == frac(-1, 1));
  CHECK(m[2][0] == frac(-2, 1));
  CHECK(m[2][1] == frac(3, 1));
  CHECK(m[2][2] == frac(-1, 1));

  // u=5, v=1, d=3 gives the classical 3x3 square with line sum 15.
  auto lo = magic_square_view(make_gap_grid(frac(1, 1), frac(1, 1), frac(3, 1), 3));
  CHECK(lo[0][0] == frac(6, 1));
  CHECK(lo[0][1] == frac(1, 1));
  CHECK(lo[0][2] == frac(8, 1));
  CHECK(lo[1][0] == frac(7, 1));
  CHECK(lo[1][1] == frac(5, 1));
  CHECK(lo[1][2] == frac(3, 1));
  CHECK(lo[2][0] == frac(2, 1));
  CHECK(lo[2][1] == frac(9, 1));
  CHECK(lo[2][2] == frac(4, 1));

  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 7);
  for (int trial = 0; trial < 25; ++trial) {
    GapGrid g = make_gap_grid(frac(num(rng), den(rng)), frac(num(rng), den(rng)),
                              frac(num(rng), den(rng)), 3);
    auto sq = magic_square_view(g);
    Rat want = 3 * g.entries[1][1];
    for (int i = 0; i < 3; ++i) {
      CHECK(sq[i][0] + sq[i][1] + sq[i][2] == want);
      CHECK(sq[0][i] + sq[1][i] + sq[2][i] == want);
    }
    CHECK(sq[0][0] + sq[1][1] + sq[2][2] == want);
    CHECK(sq[0][2] + sq[1][1] + sq[2][0] == want);

    // The nine magic entries are a permutation of the nine grid entries.
    std::vector<Rat> grid_vals, magic_vals;
    for (const auto& row : g.entries)
      for (const Rat& e : row) grid_vals.push_back(e);
    for (const auto& row : sq)
      for (const Rat& e : row) magic_vals.push_back(e);
    std::sort(grid_vals.begin(), grid_vals.end());
    std::sort(magic_vals.begin(), magic_vals.end());
    CHECK(grid_vals == magic_vals);
  }

  CHECK_THROWS_AS((void)magic_square_view(gap_2x3(frac(1, 1), frac(2, 1))),
                  std::invalid_argument);
}

TEST_CASE("search for 3x3 grids of distinct squares comes up empty") {
  CHECK(search_3x3_gap_squares(10).empty());
  CHECK(search_3x3_gap_squares(100).empty());
  CHECK(search_3x3_gap_squares(1000).empty());
  CHECK_THROWS_AS((void)search_3x3_gap_squares(0), std::invalid_argument);
}

TEST_CASE("cross-module bridge: square hits in a progression recover (r, t)") {
  ApSquareReport rep = squares_in_ap(make_int(9), make_int(40), 7);
  REQUIRE(rep.hit_indices == std::vector<std::uint64_t>{1, 4, 7});
  Int v1 = rep.a + make_int(1) * rep.b;
  Int v2 = rep.a + make_int(4) * rep.b;
  Int v3 = rep.a + make_int(7) * rep.b;
  Int x = *is_square(v1), y = *is_square(v2), z = *is_square(v3);
  CHECK(x == make_int(7));
  CHECK(y == make_int(13));
  CHECK(z == make_int(17));

  Rat xr(x), yr(y), zr(z);
  Rat four_r = 2 * yr - xr - zr;
  REQUIRE(four_r != 0);
  Rat r = four_r / 4;
  Rat t = (zr - xr) / four_r;
  CHECK(r == frac(1, 2));
  CHECK(t == frac(5, 1));

  Ap3Params p = ap3_squares(r, t);
  CHECK(p.x == xr);
  CHECK(p.y == yr);
  CHECK(p.z == zr);
  CHECK(p.delta == Rat(v2 - v1));

  GapGrid g = gap_2x3(r, t);
  CHECK(g.entries[0][0] == Rat(v1));
  CHECK(g.entries[0][1] == Rat(v2));
  CHECK(g.entries[0][2] == Rat(v3));
}
