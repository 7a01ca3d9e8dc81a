#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

enum class RepSign { sum, difference };

// Representation-count profile of E +/- E under the ORDERED-pair convention,
// so the total mass is always |E|^2.  The unordered-with-repetition view
// (pairs {a,b}, a <= b) is exposed separately for the B2[g] work.
struct RepProfile {
  RepSign sign;
  std::map<Int, Int> counts;  // value -> number of ordered pairs
  std::size_t ground_set_size;
};

// b0 + sum over I of generators; all 2^d subset sums are distinct members of
// the searched set when emitted by find_affine_cubes.
struct AffineCube {
  Int b0;
  std::vector<Int> generators;  // sorted ascending, strictly increasing
  bool operator==(const AffineCube& o) const = default;
  bool operator<(const AffineCube& o) const {
    if (b0 != o.b0) return b0 < o.b0;
    return std::lexicographical_compare(generators.begin(), generators.end(),
                                        o.generators.begin(), o.generators.end());
  }
};

// Distinct-value counts of the three coordinate projections of a pair set G.
struct GridStats {
  std::size_t sum_count = 0;
  std::size_t diff_count = 0;
  std::size_t prod_count = 0;
  std::size_t pair_count = 0;
};

// counts(n) = #{(a,b) in E x E : a+b = n} (or a-b for difference).
// Throws std::invalid_argument on empty or non-distinct E.
RepProfile rep_profile(const std::vector<Int>& E, RepSign sign);

// counts(n) = #{{a,b} : a <= b, a+b = n} — the unordered-with-repetition
// convention used by Sidon/B2[g] counting.
RepProfile rep_profile_unordered_sums(const std::vector<Int>& E);

// Sum over n of counts(n)^m, exact.  m >= 1.
Int energy_moment(const RepProfile& profile, unsigned m);

// Sum over n of binomial(counts(n), j), exact; counts below j contribute 0.
Int binom_moment(const RepProfile& profile, unsigned j);

// |{a+b : a,b in E}| over unordered values.
std::size_t sumset_size(const std::vector<Int>& E);

// Every dimension-d cube whose 2^d subset sums are distinct elements of A,
// deduplicated up to generator order (generators emitted sorted ascending).
// Requires d >= 2 and every |a| <= bound; 2^d > |A| yields an empty list.
std::vector<AffineCube> find_affine_cubes(const std::vector<Int>& A, unsigned d, const Int& bound);

// Exact distinct-value counts of {a+b}, {a-b}, {ab} over (a,b) in G.
// Throws std::invalid_argument when some pair leaves A x A or G is empty.
GridStats grid_stats(const std::vector<Int>& A, const std::vector<std::pair<Int, Int>>& G);

}  // namespace squarelab
