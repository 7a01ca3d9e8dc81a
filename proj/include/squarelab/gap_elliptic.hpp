#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// Parameters of a three-term arithmetic progression of rational squares
// x^2, y^2, z^2 with x = r(t^2-2t-1), y = r(t^2+1), z = r(t^2+2t-1); the
// common difference is delta = z^2 - y^2 = y^2 - x^2 = 4 r^2 (t^3 - t).
struct Ap3Params {
  Rat r, t;
  Rat x, y, z;
  Rat delta;
  bool degenerate = false;  // t in {0, 1, -1}: delta vanishes
};

// A rational point on the curve delta * Y^2 = X^3 - X, or its point at
// infinity; finite points always satisfy the equation exactly.
struct ECPoint {
  Rat curve_delta;
  bool at_infinity = true;
  Rat x, y;
  friend bool operator==(const ECPoint& a, const ECPoint& b) {
    if (a.curve_delta != b.curve_delta || a.at_infinity != b.at_infinity) return false;
    return a.at_infinity || (a.x == b.x && a.y == b.y);
  }
};

// A rows-by-3 grid with entries[j1][j2] = x0 + j1 * v + j2 * delta.
struct GapGrid {
  Rat x0, v, delta;
  std::size_t rows = 0, cols = 3;
  std::vector<std::vector<Rat>> entries;
};

// Builds the progression parameters; throws when r = 0. A degenerate t
// (0 or +-1) is allowed and flagged, with delta = 0.
Ap3Params ap3_squares(const Rat& r, const Rat& t);

// The doubled parameters (T, R) with T = y^2/delta and R = delta^2/(2xyz):
// the progression of ap3_squares(R, T) shares the common difference delta.
// R keeps its sign (squaring removes it downstream, but reports record it).
// Throws on degenerate input.
std::pair<Rat, Rat> doubled_parameters(const Ap3Params& p);

// The identity element of the curve with the given nonzero delta.
ECPoint ec_infinity(const Rat& delta);

// A validated finite point; throws unless delta != 0 and delta y^2 = x^3 - x.
ECPoint ec_point(const Rat& delta, const Rat& x, const Rat& y);

ECPoint ec_negate(const ECPoint& p);

// Tangent doubling in exact rationals; two-torsion (y = 0) and infinity map
// to infinity.
ECPoint ec_double(const ECPoint& p);

// Chord-tangent addition in exact rationals; throws when the points live on
// curves with different delta.
ECPoint ec_add(const ECPoint& p, const ECPoint& q);

// Grid with entries x0 + j1 v + j2 delta; rows must be 2 or 3, cols is 3.
GapGrid make_gap_grid(const Rat& x0, const Rat& v, const Rat& delta, std::size_t rows);

// Two rows of three rational squares sharing the common difference delta:
// row one from ap3_squares(r, t), row two from the doubled parameters.
// Throws on degenerate t (0, +-1) or r = 0.
GapGrid gap_2x3(const Rat& r, const Rat& t);

// Rearranges a 3-by-3 grid around its center entry u into the classical
// matrix (u+v, u-v-d, u+d / u-v+d, u, u+v-d / u-d, u+v+d, u-v), whose eight
// row, column, and diagonal sums all equal 3u. Throws unless the grid is 3x3.
std::array<std::array<Rat, 3>, 3> magic_square_view(const GapGrid& grid);

// Exhaustively searches for 3-by-3 grids of nine distinct integer squares
// (both grid directions are then square progressions) with all entries at
// most height_bound^2 and v, delta > 0; emitted grids are canonicalized to
// delta > v and re-validated entrywise. Expected empty at every tested bound.
std::vector<GapGrid> search_3x3_gap_squares(std::uint64_t height_bound);

}  // namespace squarelab
