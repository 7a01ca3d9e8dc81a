#pragma once

#include <cstdint>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// Configuration for the randomized multiplicity-bounded square sequence:
// element b is kept with probability 1 / (b^(1/(2g+1)) * ln(2+b)^beta),
// decided by a counter-based generator keyed on (seed, b) so the draw for b
// never depends on iteration order or thread count.
struct B2Config {
  unsigned g = 1;          // multiplicity bound: at most g unordered pair sums per target
  double beta = 0.0;       // logarithmic damping exponent, must exceed 1
  std::uint64_t x_max = 0;  // elements are sampled from 1..x_max
  std::uint64_t seed = 0;
};

struct B2Outcome {
  std::vector<std::uint64_t> sampled;  // the drawn base set, ascending
  std::vector<std::uint64_t> removed;  // elements deleted by the repair pass, ascending
  std::vector<Int> kept_squares;       // squares of the surviving elements, ascending
};

// Verdict of a multiplicity check: ok iff every integer has at most g
// representations n = a + b with a <= b drawn from the set (a = b allowed).
// worst_n is the largest target attaining the maximal representation count.
struct B2Check {
  bool ok = false;
  Int worst_n;
  std::uint64_t worst_count = 0;
};

// Smallest damping exponent the construction tolerates for a given g, with a
// small safety margin (the g = 1 case uses the classical anchor 16/3).
double default_beta(unsigned g);

// Counts unordered pair sums (repetition allowed) of a set of distinct
// positive integers and reports whether the maximum count stays within g.
B2Check is_b2g(const std::vector<Int>& values, unsigned g);

// Scans squares 1, 4, 9, ... up to the limit and keeps each square exactly
// when the set so far plus the candidate still has all pair sums distinct.
std::vector<Int> greedy_sidon_squares(std::uint64_t limit);

// Draws the random base set, then deletes every element that is the largest
// number involved in some (g+1)-fold coincidence b^2 + b'^2 = n inside the
// draw; the surviving squares are guaranteed to pass is_b2g at the given g.
B2Outcome random_b2g_squares(const B2Config& cfg);

// Least-squares slope of log a_k against log k over the top half of a
// strictly increasing sequence with at least 16 entries.
double growth_exponent_fit(const std::vector<Int>& seq);

}  // namespace squarelab
