#include "squarelab/gap_elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

#include "squarelab/core_arith.hpp"

namespace squarelab {

namespace {

void check_on_curve(const ECPoint& p, const char* who) {
  if (p.at_infinity) return;
  if (p.curve_delta * p.y * p.y != p.x * p.x * p.x - p.x)
    throw std::logic_error(std::string(who) + ": point left the curve");
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

Ap3Params ap3_squares(const Rat& r, const Rat& t) {
  if (r == 0) throw std::invalid_argument("ap3_squares: r must be nonzero");
  Ap3Params p;
  p.r = r;
  p.t = t;
  Rat t2 = t * t;
  p.x = r * (t2 - 2 * t - 1);
  p.y = r * (t2 + 1);
  p.z = r * (t2 + 2 * t - 1);
  p.delta = p.z * p.z - p.y * p.y;
  if (p.x * p.x + p.z * p.z != 2 * p.y * p.y)
    throw std::logic_error("ap3_squares: progression identity failed");
  if (p.delta != 4 * r * r * (t * t2 - t))
    throw std::logic_error("ap3_squares: common-difference identity failed");
  p.degenerate = p.delta == 0;
  return p;
}

std::pair<Rat, Rat> doubled_parameters(const Ap3Params& p) {
  if (p.degenerate)
    throw std::invalid_argument("doubled_parameters: degenerate progression has no doubling");
  Rat t_next = p.y * p.y / p.delta;
  Rat r_next = p.delta * p.delta / (2 * p.x * p.y * p.z);
  return {t_next, r_next};
}

ECPoint ec_infinity(const Rat& delta) {
  if (delta == 0) throw std::invalid_argument("ec_infinity: delta must be nonzero");
  ECPoint p;
  p.curve_delta = delta;
  return p;
}

ECPoint ec_point(const Rat& delta, const Rat& x, const Rat& y) {
  if (delta == 0) throw std::invalid_argument("ec_point: delta must be nonzero");
  if (delta * y * y != x * x * x - x)
    throw std::invalid_argument("ec_point: (" + to_string(x) + ", " + to_string(y) +
                                ") does not satisfy delta y^2 = x^3 - x");
  ECPoint p;
  p.curve_delta = delta;
  p.at_infinity = false;
  p.x = x;
  p.y = y;
  return p;
}

ECPoint ec_negate(const ECPoint& p) {
  ECPoint out = p;
  if (!out.at_infinity) out.y = -out.y;
  return out;
}

ECPoint ec_double(const ECPoint& p) {
  if (p.at_infinity || p.y == 0) return ec_infinity(p.curve_delta);
  // Tangent slope from implicit differentiation of delta y^2 = x^3 - x.
  Rat lambda = (3 * p.x * p.x - 1) / (2 * p.curve_delta * p.y);
  Rat x2 = p.curve_delta * lambda * lambda - 2 * p.x;
  Rat y2 = -(p.y + lambda * (x2 - p.x));
  ECPoint out;
  out.curve_delta = p.curve_delta;
  out.at_infinity = false;
  out.x = x2;
  out.y = y2;
  check_on_curve(out, "ec_double");
  return out;
}

ECPoint ec_add(const ECPoint& p, const ECPoint& q) {
  if (p.curve_delta != q.curve_delta)
    throw std::invalid_argument("ec_add: points live on different curves");
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;
  if (p.x == q.x) {
    if (p.y == -q.y) return ec_infinity(p.curve_delta);
    return ec_double(p);
  }
  Rat lambda = (q.y - p.y) / (q.x - p.x);
  Rat x3 = p.curve_delta * lambda * lambda - p.x - q.x;
  Rat y3 = -(p.y + lambda * (x3 - p.x));
  ECPoint out;
  out.curve_delta = p.curve_delta;
  out.at_infinity = false;
  out.x = x3;
  out.y = y3;
  check_on_curve(out, "ec_add");
  return out;
}

GapGrid make_gap_grid(const Rat& x0, const Rat& v, const Rat& delta, std::size_t rows) {
  if (rows != 2 && rows != 3)
    throw std::invalid_argument("make_gap_grid: rows must be 2 or 3");
  GapGrid g;
  g.x0 = x0;
  g.v = v;
  g.delta = delta;
  g.rows = rows;
  g.cols = 3;
  for (std::size_t j1 = 0; j1 < rows; ++j1) {
    std::vector<Rat> row;
    for (std::size_t j2 = 0; j2 < 3; ++j2)
      row.push_back(Rat(x0 + static_cast<long>(j1) * v + static_cast<long>(j2) * delta));
    g.entries.push_back(std::move(row));
  }
  return g;
}

GapGrid gap_2x3(const Rat& r, const Rat& t) {
  Ap3Params first = ap3_squares(r, t);
  if (first.degenerate)
    throw std::invalid_argument("gap_2x3: t in {0, 1, -1} collapses the progression");
  auto [t2, r2] = doubled_parameters(first);
  Ap3Params second = ap3_squares(r2, t2);
  if (second.delta != first.delta)
    throw std::logic_error("gap_2x3: doubled progression changed the common difference");
  GapGrid g = make_gap_grid(Rat(first.x * first.x),
                            Rat(second.x * second.x - first.x * first.x), first.delta, 2);
  for (const auto& row : g.entries)
    for (const Rat& e : row)
      if (!rational_square_root(e))
        throw std::logic_error("gap_2x3: entry " + to_string(e) + " is not a rational square");
  return g;
}

std::array<std::array<Rat, 3>, 3> magic_square_view(const GapGrid& grid) {
  if (grid.rows != 3 || grid.cols != 3)
    throw std::invalid_argument("magic_square_view: grid must be 3x3");
  const Rat u = grid.entries[1][1];
  const Rat& v = grid.v;
  const Rat& d = grid.delta;
  return {{{Rat(u + v), Rat(u - v - d), Rat(u + d)},
           {Rat(u - v + d), u, Rat(u + v - d)},
           {Rat(u - d), Rat(u + v + d), Rat(u - v)}}};
}

std::vector<GapGrid> search_3x3_gap_squares(std::uint64_t height_bound) {
  if (height_bound < 1) throw std::invalid_argument("search_3x3_gap_squares: need bound >= 1");
  // First terms of 3-term square progressions, keyed by common difference:
  // a^2, m^2, c^2 in progression means a and c share parity and
  // (a^2 + c^2)/2 is a perfect square.
  std::map<std::uint64_t, std::vector<std::uint64_t>> starts;
  for (std::uint64_t c = 3; c <= height_bound; ++c)
    for (std::uint64_t a = c - 2;; a -= 2) {
      std::uint64_t m2 = (a * a + c * c) / 2;
      std::uint64_t m = isqrt_u64(m2);
      if (m * m == m2) starts[m2 - a * a].push_back(a * a);
      if (a <= 2) break;
    }

  std::vector<GapGrid> found;
  const std::uint64_t cap = height_bound * height_bound;
  for (auto& [diff, lst] : starts) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    std::set<std::uint64_t> members(lst.begin(), lst.end());
    for (std::size_t i = 0; i < lst.size(); ++i)
      for (std::size_t j = i + 1; j < lst.size(); ++j) {
        std::uint64_t s1 = lst[i], s2 = lst[j], v = s2 - s1;
        if (v >= diff) continue;  // canonical orientation: delta > v > 0
        std::uint64_t s3 = 2 * s2 - s1;
        if (!members.count(s3)) continue;
        std::set<std::uint64_t> nine;
        bool all_square = true, in_range = true;
        for (std::uint64_t j1 = 0; j1 < 3 && all_square; ++j1)
          for (std::uint64_t j2 = 0; j2 < 3; ++j2) {
            std::uint64_t e = s1 + j1 * v + j2 * diff;
            nine.insert(e);
            std::uint64_t root = isqrt_u64(e);
            all_square = all_square && root * root == e;
            in_range = in_range && e <= cap;
          }
        if (nine.size() != 9 || !all_square || !in_range) continue;
        found.push_back(make_gap_grid(Rat(static_cast<unsigned long>(s1)),
                                      Rat(static_cast<unsigned long>(v)),
                                      Rat(static_cast<unsigned long>(diff)), 3));
      }
  }
  return found;
}

}  // namespace squarelab
