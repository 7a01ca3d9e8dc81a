#pragma once

#include <cstdint>
#include <vector>

#include "squarelab/core_arith.hpp"
#include "squarelab/int_types.hpp"

namespace squarelab {

// A quadratic congruence whose solution set mod `modulus` is under study.
enum class OmegaKind { x_squared_minus_a, x_times_x_minus_1 };

struct OmegaSpec {
  OmegaKind kind = OmegaKind::x_squared_minus_a;
  Int a;  // only read for x_squared_minus_a
  Int modulus;
};

// k roots x_1 < ... < x_k of one congruence mod n, with their span and the
// observed exponent log(span)/log(n).
struct ClusterWitness {
  Int n;
  std::vector<Int> roots;
  Int span;
  double exponent = 0.0;
};

// The exponent alpha_d(k) governing how long an interval must be before it
// can hold k+1 roots of a degree-d congruence, with the decomposition
// k+1 = r*d + s it is built from.
struct ExponentBound {
  std::uint64_t d = 0;
  std::uint64_t k = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  Rat alpha;
};

// A squarefree modulus n = p_1...p_k engineered so that the roots of
// x(x-1) mod n are the subset sums of the x_i, one root clustered per x_i.
struct ClusteredModulus {
  Int n;
  std::vector<Int> primes;  // p_1 < ... < p_{k-1}, then p_k from the residue search
  std::vector<Int> coeffs;  // a_i with x_i = a_i * n / p_i
  std::vector<Int> x;       // x_i = 1 (mod p_i), 0 (mod p_j) for j != i
  ResidueSet omega;         // all 2^k roots of x(x-1) mod n
};

enum class ClusterVariant { edge, origin };

struct VandermondeCertificate {
  Int product;  // prod_{i<j} (x_j - x_i)
  Int divisor;  // b^floor((k-1)^2/4)
  bool ok = false;
};

// Exhaustive statistics for x^2 = a over all moduli b <= b_max and all a:
// the k-root cluster with the smallest exponent, plus violation counters
// for the span lower bound and the Vandermonde divisibility certificate.
struct ShortIntervalScan {
  ClusterWitness worst;
  Rat bound_exponent;                        // (l-1)/(2l), l largest odd <= k
  std::uint64_t clusters_checked = 0;
  std::uint64_t bound_violations = 0;        // span <= b^bound_exponent
  std::uint64_t certificate_violations = 0;  // divisor does not divide product
};

// Exact solution set of the congruence mod its modulus: solved per prime
// power (quadratic lifting) and CRT-combined, sorted ascending.
ResidueSet root_set(const OmegaSpec& spec);

// Roots of a monic polynomial (coeffs ascending, leading coefficient 1) by
// exhaustive search per prime power; throws when a prime power exceeds 1e6.
ResidueSet root_set_monic(const std::vector<Int>& coeffs, const Int& modulus);

// alpha_d(k) = (d*C(r,2) + r*s) / C(k+1,2) where k+1 = r*d + s, 0 <= s < d.
// Throws when k < d.
ExponentBound alpha_exponent(std::uint64_t d, std::uint64_t k);

// The k consecutive residues of omega with the smallest span (non-wrapping
// window over the sorted list); ties resolved toward the smallest x_1.
// Throws when omega has fewer than k residues or k < 2.
ClusterWitness min_window_with_k_roots(const ResidueSet& omega, std::size_t k);

// Builds n = p_1...p_k with x_i = a_i*n/p_i = delta_ij (mod p_j): the k-1
// smallest primes above max(prime_floor, k) (for `origin` also above
// 2k/epsilon), then p_k found by stepping the CRT residue with a 1e6-step
// budget.  `edge` takes a_j = floor(p_j/k); `origin` takes a_j = 1 and
// returns x_k as the signed representative 1 - sum of the other x_i.
ClusteredModulus construct_clustered_modulus(unsigned k, const Int& prime_floor,
                                             ClusterVariant variant,
                                             double epsilon = 0.5);

// product = prod_{i<j}(x_j - x_i); divisor = b^floor((k-1)^2/4); ok means
// divisor | product.  Throws, naming the offender, when some x_i^2 != a
// (mod b) or the x_i are not distinct.
VandermondeCertificate vandermonde_certificate(const std::vector<Int>& x,
                                               const Int& a, const Int& b);

// Scans every modulus b in [2, b_max] and every residue a.  Requires
// b_max >= 4 and k >= 3.
ShortIntervalScan short_interval_scan(std::uint64_t b_max, unsigned k,
                                      unsigned threads = 0);

}  // namespace squarelab
