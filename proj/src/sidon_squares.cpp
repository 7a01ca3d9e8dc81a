#include "squarelab/sidon_squares.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "squarelab/parallel.hpp"

namespace squarelab {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64(splitmix64(seed) ^ counter)) * 0x1.0p-64;
}

// log of a positive big integer, stable far beyond double range.
double log_int(const Int& v) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * 0.6931471805599453;
}

}  // namespace

double default_beta(unsigned g) {
  if (g < 1) throw std::invalid_argument("default_beta: need g >= 1");
  if (g == 1) return 16.0 / 3.0;
  return (std::pow(2.0, 2.0 * g + 1.0) - 1.0) / (2.0 * g + 1.0) + 2.0 / g + 0.01;
}

B2Check is_b2g(const std::vector<Int>& values, unsigned g) {
  if (g < 1) throw std::invalid_argument("is_b2g: need g >= 1");
  if (values.empty()) throw std::invalid_argument("is_b2g: the set must be nonempty");
  std::vector<Int> s(values);
  std::sort(s.begin(), s.end());
  if (s.front() < 1) throw std::invalid_argument("is_b2g: elements must be positive");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) throw std::invalid_argument("is_b2g: elements must be distinct");

  std::map<Int, std::uint64_t> counts;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) ++counts[Int(s[i] + s[j])];

  B2Check out;
  for (const auto& [n, c] : counts)
    if (c >= out.worst_count) {  // >= : ties resolve to the largest target
      out.worst_count = c;
      out.worst_n = n;
    }
  out.ok = out.worst_count <= g;
  return out;
}

std::vector<Int> greedy_sidon_squares(std::uint64_t limit) {
  if (limit < 1) throw std::invalid_argument("greedy_sidon_squares: need limit >= 1");
  std::vector<std::uint64_t> kept;
  std::unordered_set<std::uint64_t> pair_sums;
  for (std::uint64_t c = 1; c * c <= limit; ++c) {
    std::uint64_t s = c * c;
    bool ok = !pair_sums.count(s + s);
    for (std::uint64_t t : kept)
      if (pair_sums.count(s + t)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    pair_sums.insert(s + s);
    for (std::uint64_t t : kept) pair_sums.insert(s + t);
    kept.push_back(s);
  }
  std::vector<Int> out;
  out.reserve(kept.size());
  for (std::uint64_t s : kept) out.push_back(make_int(s));
  return out;
}

B2Outcome random_b2g_squares(const B2Config& cfg) {
  if (cfg.g < 1) throw std::invalid_argument("random_b2g_squares: need g >= 1");
  if (!(cfg.beta > 1.0)) throw std::invalid_argument("random_b2g_squares: need beta > 1");
  if (cfg.x_max < 16) throw std::invalid_argument("random_b2g_squares: need x_max >= 16");

  const double inv_root = 1.0 / (2.0 * cfg.g + 1.0);
  auto body = [&](std::vector<std::uint64_t>& acc, std::uint64_t b) {
    double bd = static_cast<double>(b);
    double p = 1.0 / (std::pow(bd, inv_root) * std::pow(std::log(2.0 + bd), cfg.beta));
    if (uniform01(cfg.seed, b) < p) acc.push_back(b);
  };
  auto merge = [](std::vector<std::uint64_t>& total, const std::vector<std::uint64_t>& acc) {
    total.insert(total.end(), acc.begin(), acc.end());
  };
  B2Outcome out;
  out.sampled = parallel_reduce(1, cfg.x_max + 1, resolve_threads(0),
                                std::vector<std::uint64_t>{}, body, merge);

  // Repair pass: for every target with more than g unordered representations
  // b^2 + b'^2 inside the draw, delete the largest element involved.
  using Wide = unsigned __int128;
  std::map<Wide, std::vector<std::pair<std::uint64_t, std::uint64_t>>> reps;
  for (std::size_t i = 0; i < out.sampled.size(); ++i)
    for (std::size_t j = i; j < out.sampled.size(); ++j) {
      std::uint64_t b = out.sampled[i], bp = out.sampled[j];
      reps[Wide(b) * b + Wide(bp) * bp].push_back({b, bp});
    }
  std::set<std::uint64_t> removed;
  for (const auto& [n, lst] : reps)
    if (lst.size() > cfg.g) {
      std::uint64_t largest = 0;
      for (const auto& [b, bp] : lst) largest = std::max(largest, bp);
      removed.insert(largest);
    }
  out.removed.assign(removed.begin(), removed.end());

  for (std::uint64_t b : out.sampled)
    if (!removed.count(b)) out.kept_squares.push_back(Int(make_int(b) * make_int(b)));

  if (!out.kept_squares.empty()) {
    B2Check check = is_b2g(out.kept_squares, cfg.g);
    if (!check.ok)
      throw std::logic_error("random_b2g_squares: repair pass left " +
                             to_string(check.worst_n) + " with " +
                             std::to_string(check.worst_count) + " representations");
  }
  return out;
}

double growth_exponent_fit(const std::vector<Int>& seq) {
  const std::size_t k = seq.size();
  if (k < 16) throw std::invalid_argument("growth_exponent_fit: need at least 16 points");
  if (seq.front() < 1) throw std::invalid_argument("growth_exponent_fit: terms must be positive");
  for (std::size_t i = 1; i < k; ++i)
    if (seq[i] <= seq[i - 1])
      throw std::invalid_argument("growth_exponent_fit: sequence must be strictly increasing");

  const std::size_t start = k / 2;  // top half: ranks start+1 .. k
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(k - start);
  for (std::size_t i = start; i < k; ++i) {
    double x = std::log(static_cast<double>(i + 1));
    double y = log_int(seq[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace squarelab
