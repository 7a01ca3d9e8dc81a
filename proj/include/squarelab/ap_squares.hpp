#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// The progression a+b, a+2b, ..., a+kb together with its square hits.
struct ApSquareReport {
  Int a;
  Int b;
  std::uint64_t k = 0;
  std::vector<std::uint64_t> hit_indices;  // sorted i in [1,k] with a+ib square
  std::uint64_t count = 0;                 // == hit_indices.size()
};

// Exact hit set for the length-k progression.  One pass over the terms with
// incremental residue prefilters; an exact root test only on survivors.
ApSquareReport squares_in_ap(const Int& a, const Int& b, std::uint64_t k);

// Best report over the box 1 <= a <= a_max, 1 <= b <= b_max; ties broken by
// smallest (b, a).  The result is a lower bound for the true length-k
// maximum: exact only within the searched box.
ApSquareReport sigma_lower_search(std::uint64_t k, std::uint64_t a_max,
                                  std::uint64_t b_max, unsigned threads = 0);

// All quadruples of squares s1 < s2 < s3 < s4 <= limit in arithmetic
// progression, enumerated via the common difference of the inner pair.
// No such quadruple exists, so any returned witness is a hard failure
// for every caller.
std::vector<std::array<Int, 4>> fermat_four_term_check(std::uint64_t limit);

struct ProgressionBenchmark {
  std::uint64_t count = 0;
  double model = 0.0;      // sqrt(8k/3)
  double deviation = 0.0;  // count - model
};

// Square count of 49 + 24i over i = 1..k against the sqrt(8k/3) model.
// Throws std::invalid_argument when k < 8.
ProgressionBenchmark benchmark_progression(std::uint64_t k);

}  // namespace squarelab
