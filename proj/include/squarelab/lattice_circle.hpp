#pragma once

#include <cstdint>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// A lattice point on the circle x^2 + y^2 = M.
struct CirclePoint {
  Int x;
  Int y;
  Int M;
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

// Angularly consecutive points on one circle; arc_length is the radius times
// the central angle subtended by the first and last point.
struct ArcCluster {
  Int M;
  std::vector<CirclePoint> points;
  double arc_length = 0.0;
};

enum class FamilyKind { pair, triple, quad_fibonacci };

struct FamilyReport {
  std::vector<CirclePoint> points;
  Int M;
  double extreme_separation = 0.0;  // largest pairwise chord
  double model_length = 0.0;        // the family's reference arc length
};

struct ArcBoundReport {
  bool ok = true;
  ArcCluster worst;               // tightest k+1 window seen
  double worst_exponent = 0.0;    // log(arc) / log(sqrt(M)) of that window
  Rat threshold_exponent;         // arcs of length R^this must hold <= k points
  std::uint64_t clusters_checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t ambiguous = 0;    // windows the exact re-check could not decide
};

// Every integer point on x^2 + y^2 = M — all quadrants and axes — built from
// the prime factorization (a square-root extraction per prime 1 mod 4, pair
// exhaustion over conjugate exponents). Empty iff some prime 3 mod 4 divides
// M to an odd power. Sorted by angle with an exact integer comparator.
std::vector<CirclePoint> two_square_reps(const Int& M);

// A maximum-cardinality set of points on circle M inside a closed arc of the
// given length; ties resolved toward the smallest starting angle. Empty
// circle gives an empty cluster.
ArcCluster max_arc_cluster(const Int& M, double arc_length);

// Checks every circle M <= m_max: no closed arc of length R^e may contain
// more than k points, where R = sqrt(M) and e = 1/2 - 1/(4*floor(k/2)+2).
// Near-threshold windows are re-adjudicated by exact integer chord lengths
// against a bracketed threshold; `ambiguous` counts any still undecided.
// Requires m_max >= 2 and 2 <= k <= 5.
ArcBoundReport arc_bound_verify(std::uint64_t m_max, unsigned k, unsigned threads = 0);

// Explicit point families with tight clusters:
//   pair:   (n, n+1), (n+1, n) on M = 2n^2+2n+1; separation sqrt(2).
//   triple: (4n^3-1, 2n^2+2n), (4n^3, 2n^2+1), (4n^3+1, 2n^2-2n) on
//           M = 16n^6+4n^4+4n^2+1; model length (16R)^(1/3).
//   quad_fibonacci: four points centered at (F(3n)/2, F(3n-3)/2) on the
//           circle M = (5/2)F(2n-3)F(2n-1)F(2n+1), offsets built from
//           G(m) = (-1)^(m+1) F(m) with F(-m) = (-1)^(m+1) F(m):
//           (x0-2G(n-2), y0-2G(n+1)), (x0+G(n-3), y0+G(n)),
//           (x0+G(n-2), y0+G(n+1)), (x0-G(n-1), y0-G(n+2));
//           model length (40+20*sqrt(5))^(1/3) * R^(1/3).
// Each point is verified to lie on its circle; a failure throws an error
// naming the offending point.
FamilyReport family_points(FamilyKind family, std::uint64_t n);

}  // namespace squarelab
