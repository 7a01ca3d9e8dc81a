#pragma once

#include "int_types.hpp"

#include <optional>
#include <vector>

namespace squarelab {

// Weight system attached to five distinct integer nodes t_1..t_5.
//
// The weights e_j = 1 / prod_{i != j} (t_i - t_j) are the unique rationals
// with  sum_j e_j * t_j^l = 0  for l = 0..3  and  sum_j e_j * t_j^4 = 1.
// L is the least positive integer that clears every denominator, and
// E_j = L * e_j are integers summing to zero.  Splitting the E_j by sign
// yields two monic degree-D products
//
//   h(x) = prod_{E_j > 0} (x + t_j)^{E_j},
//   g(x) = prod_{E_j < 0} (x + t_j)^{-E_j},
//
// whose top four coefficients agree, while the coefficients of x^(D-4)
// differ by exactly -L/4.  Hence f = h - g has degree exactly D - 4.
struct PartialFractionSystem {
  std::vector<Int> t;  // the five nodes, in input order
  std::vector<Rat> e;  // e_j = 1 / prod_{i != j} (t_i - t_j), canonical form
  Int L;               // least positive integer with every L * e_j integral
  std::vector<Int> E;  // E_j = L * e_j; gcd of the E_j is 1 and they sum to 0
  Int D;               // common degree of h and g (sum of the positive E_j)

  // Ascending coefficient lists (index = power of x).  Filled only when
  // D <= the expansion cap passed to partial_fraction_weights; empty and
  // has_explicit_polynomials == false otherwise.  The degree drop is still
  // certified exactly in either case via the moment identities above.
  std::vector<Int> h, g, f;
  bool has_explicit_polynomials = false;
};

// Default cap on D for materialising h, g and f as coefficient lists.
inline constexpr long explicit_polynomial_cap = 2048;

// Builds the weight system for five pairwise distinct integers.
//
// Hard-verified internally (throwing std::logic_error on any miss):
//   - sum e_j t_j^l == 0 exactly for l = 0..3 and == 1 for l = 4,
//   - the E_j are integers with gcd 1 summing to zero, L > 0, L % 4 == 0,
//   - when the polynomials are expanded: h and g are monic of degree D,
//     share their top four coefficients, and deg f == D - 4 with leading
//     coefficient -L/4.
//
// expand_cap: polynomials are materialised when D <= expand_cap (pass 0 to
// skip expansion entirely).  Throws std::invalid_argument unless t holds
// exactly five pairwise distinct values.
PartialFractionSystem partial_fraction_weights(
    const std::vector<Int>& t, long expand_cap = explicit_polynomial_cap);

// A normalised additive triple: positive pairwise coprime integers with
// a + b = c and a <= b.  rad is the squarefree kernel of a*b*c when the
// three parts could all be factored within the internal budget (small
// inputs always can; the huge triples produced below usually cannot, in
// which case rad and quality stay empty).  quality = ln(c) / ln(rad).
struct AbcTriple {
  Int a;
  Int b;
  Int c;
  std::optional<Int> rad;
  std::optional<double> quality;
};

// Which weight system drives the construction below: the nodes themselves,
// or their reciprocals 1/t_j (requiring every t_j to be nonzero).  The
// reciprocal weights are obtained as e_j * t_j^3 * prod_i t_i and re-derived
// independently from the nodes 1/t_j as an exactness check.
enum class AbcVariant { direct, reciprocal };

// Result of the additive-triple construction from five square values in an
// arithmetic progression.
struct AbcConstruction {
  AbcTriple triple;
  Int sqrt_product;    // product of the integer square roots of the A + t_j B
  Int first_product;   // positive-exponent side, before gcd removal (signed)
  Int second_product;  // negative-exponent side, before gcd removal (signed)
  Int common_divisor;  // positive gcd removed from both sides
  std::vector<Int> exponents;  // integer weight vector actually used
};

// Builds a normalised additive triple out of the five perfect squares
// A + t_j B sitting in the arithmetic progression A + x B.
//
// Requirements (std::invalid_argument otherwise):
//   - B >= 1 and gcd(A, B) == 1,
//   - t holds five pairwise distinct integers (nonzero ones for the
//     reciprocal variant),
//   - every A + t_j B is a perfect square -- the error message lists each
//     offending value,
//   - no A + t_j B is zero and the two product sides differ (either
//     degeneracy collapses the triple),
//   - the estimated bit size of the products stays within size_budget_bits.
//
// direct variant:      first = prod_{E_j>0} (A + t_j B)^{E_j},
//                      second = prod_{E_j<0} (A + t_j B)^{-E_j}.
// reciprocal variant:  the reciprocal weights are scaled to a primitive
//                      integer vector E*_j and each side additionally
//                      carries the power of t_j from the opposite sign
//                      class, clearing all denominators of the evaluation
//                      at the reciprocal nodes; the sides may then be
//                      negative.
//
// The triple is the three absolute values {|first|, |second|, |first-second|}
// divided by their gcd and sorted so that a + b = c.  They are pairwise
// coprime by construction (hard-asserted).
AbcConstruction abc_from_square_ap(const Int& A, const Int& B,
                                   const std::vector<Int>& t,
                                   AbcVariant variant,
                                   long size_budget_bits = 4'000'000);

// Normalises (a, b) with a, b >= 1 and gcd(a, b) = 1 into the triple
// (min, max, a + b), computes rad(a*b*c) by full factorisation, and the
// quality ln(c) / ln(rad).  Throws std::invalid_argument on nonpositive or
// non-coprime input.  Intended for inputs whose product factors readily.
AbcTriple abc_quality(const Int& a, const Int& b);

}  // namespace squarelab
