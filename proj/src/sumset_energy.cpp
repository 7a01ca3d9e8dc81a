#include "squarelab/sumset_energy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace squarelab {

namespace {

std::vector<Int> checked_distinct(const std::vector<Int>& E, const char* who) {
  if (E.empty()) throw std::invalid_argument(std::string(who) + ": empty ground set");
  std::vector<Int> s = E;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string(who) + ": elements must be distinct");
  return s;
}

}  // namespace

RepProfile rep_profile(const std::vector<Int>& E, RepSign sign) {
  auto s = checked_distinct(E, "rep_profile");
  RepProfile out{sign, {}, s.size()};
  for (const Int& a : s)
    for (const Int& b : s) {
      Int key = sign == RepSign::sum ? Int(a + b) : Int(a - b);
      out.counts[key] += 1;
    }
  return out;
}

RepProfile rep_profile_unordered_sums(const std::vector<Int>& E) {
  auto s = checked_distinct(E, "rep_profile_unordered_sums");
  RepProfile out{RepSign::sum, {}, s.size()};
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) out.counts[s[i] + s[j]] += 1;
  return out;
}

Int energy_moment(const RepProfile& profile, unsigned m) {
  if (m < 1) throw std::invalid_argument("energy_moment: moment must be >= 1");
  Int total = 0;
  for (const auto& [value, count] : profile.counts) total += pow_int(count, m);
  return total;
}

Int binom_moment(const RepProfile& profile, unsigned j) {
  if (j < 1) throw std::invalid_argument("binom_moment: order must be >= 1");
  Int total = 0;
  for (const auto& [value, count] : profile.counts) total += binomial(count, j);
  return total;
}

std::size_t sumset_size(const std::vector<Int>& E) {
  auto s = checked_distinct(E, "sumset_size");
  std::vector<Int> sums;
  sums.reserve(s.size() * (s.size() + 1) / 2);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) sums.push_back(s[i] + s[j]);
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums.size();
}

namespace {

// All 2^d subset sums of (b0, gens) are distinct members of A.
bool cube_valid(const Int& b0, const std::vector<Int>& gens, const std::set<Int>& A) {
  std::vector<Int> sums{b0};
  for (const Int& g : gens) {
    std::size_t n = sums.size();
    for (std::size_t i = 0; i < n; ++i) sums.push_back(sums[i] + g);
  }
  std::sort(sums.begin(), sums.end());
  if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) return false;
  for (const Int& v : sums)
    if (!A.count(v)) return false;
  return true;
}

}  // namespace

std::vector<AffineCube> find_affine_cubes(const std::vector<Int>& A, unsigned d,
                                          const Int& bound) {
  if (d < 2) throw std::invalid_argument("find_affine_cubes: dimension must be >= 2");
  auto sorted = checked_distinct(A, "find_affine_cubes");
  for (const Int& a : sorted)
    if (abs(a) > bound)
      throw std::invalid_argument("find_affine_cubes: element outside [-bound, bound]");
  if (sorted.size() < (1u << d) || (d >= 8 * sizeof(std::size_t)))
    return {};
  std::set<Int> members(sorted.begin(), sorted.end());

  // Dimension 2: pairs of equal-difference pairs, indexed by the difference.
  std::map<Int, std::vector<Int>> starts_by_diff;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      starts_by_diff[sorted[j] - sorted[i]].push_back(sorted[i]);
  std::set<AffineCube> cubes;
  for (const auto& [delta, starts] : starts_by_diff) {
    for (std::size_t i = 0; i < starts.size(); ++i)
      for (std::size_t j = i + 1; j < starts.size(); ++j) {
        Int g = starts[j] - starts[i];
        if (g == delta) continue;  // subset sums would collide
        std::vector<Int> gens{delta, g};
        std::sort(gens.begin(), gens.end());
        AffineCube c{starts[i], gens};
        if (cube_valid(c.b0, c.generators, members)) cubes.insert(std::move(c));
      }
  }

  // Extend incrementally: a (k+1)-cube is two parallel k-cubes.
  for (unsigned k = 3; k <= d; ++k) {
    std::map<std::vector<Int>, std::vector<Int>> bases_by_gens;
    for (const auto& c : cubes) bases_by_gens[c.generators].push_back(c.b0);
    std::set<AffineCube> next;
    for (auto& [gens, bases] : bases_by_gens) {
      std::sort(bases.begin(), bases.end());
      for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j) {
          std::vector<Int> g2 = gens;
          g2.push_back(bases[j] - bases[i]);
          std::sort(g2.begin(), g2.end());
          AffineCube c{bases[i], std::move(g2)};
          if (cube_valid(c.b0, c.generators, members)) next.insert(std::move(c));
        }
    }
    cubes = std::move(next);
  }
  return {cubes.begin(), cubes.end()};
}

GridStats grid_stats(const std::vector<Int>& A, const std::vector<std::pair<Int, Int>>& G) {
  auto sorted = checked_distinct(A, "grid_stats");
  if (G.empty()) throw std::invalid_argument("grid_stats: empty pair set");
  std::set<Int> members(sorted.begin(), sorted.end());
  std::set<Int> sums, diffs, prods;
  for (const auto& [a, b] : G) {
    if (!members.count(a) || !members.count(b))
      throw std::invalid_argument("grid_stats: pair (" + to_string(a) + ", " + to_string(b) +
                                  ") outside the ground set");
    sums.insert(a + b);
    diffs.insert(a - b);
    prods.insert(a * b);
  }
  return {sums.size(), diffs.size(), prods.size(), G.size()};
}

}  // namespace squarelab
