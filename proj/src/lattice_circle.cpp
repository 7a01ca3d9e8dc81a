#include "squarelab/lattice_circle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "squarelab/core_arith.hpp"
#include "squarelab/parallel.hpp"

namespace squarelab {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

long double to_ld(const Int& v) { return static_cast<long double>(mpz_get_d(v.get_mpz_t())); }

struct GInt {
  Int re, im;
};

GInt gmul(const GInt& a, const GInt& b) {
  return {Int(a.re * b.re - a.im * b.im), Int(a.re * b.im + a.im * b.re)};
}

GInt gpow(GInt base, unsigned e) {
  GInt r{1, 0};
  while (e) {
    if (e & 1) r = gmul(r, base);
    base = gmul(base, base);
    e >>= 1;
  }
  return r;
}

// Quadrant of the angle in [0, 2pi): axes are attached counterclockwise so
// (r,0) -> 0, (0,r) -> 1, (-r,0) -> 2, (0,-r) -> 3.
int quadrant(const Int& x, const Int& y) {
  if (x > 0 && y >= 0) return 0;
  if (x <= 0 && y > 0) return 1;
  if (x < 0 && y <= 0) return 2;
  return 3;
}

// Exact angular order on one circle: quadrant first, then the cross product.
bool angle_less(const CirclePoint& a, const CirclePoint& b) {
  int qa = quadrant(a.x, a.y), qb = quadrant(b.x, b.y);
  if (qa != qb) return qa < qb;
  return a.x * b.y - a.y * b.x > 0;
}

// p = re^2 + im^2 for a prime p = 1 (mod 4): take a square root of -1 and
// run the Euclidean reduction until the remainder drops below sqrt(p).
GInt split_prime(const Int& p) {
  Int a = p, b = sqrt_mod_prime_power(p - 1, p, 1).residues.front();
  while (b * b > p) {
    Int t = a % b;
    a = b;
    b = t;
  }
  auto root = is_square(Int(p - b * b));
  if (!root) throw std::logic_error("two_square_reps: prime splitting failed");
  return {b, *root};
}

std::vector<long double> angles_of(const std::vector<CirclePoint>& pts) {
  std::vector<long double> th(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    th[i] = atan2l(to_ld(pts[i].y), to_ld(pts[i].x));
    if (th[i] < 0) th[i] += kTwoPi;
  }
  return th;
}

}  // namespace

std::vector<CirclePoint> two_square_reps(const Int& M) {
  if (M < 1) throw std::invalid_argument("two_square_reps: M must be >= 1");
  unsigned two_exp = 0;
  GInt base{1, 0};
  std::vector<std::pair<GInt, unsigned>> split;
  for (const auto& [p, e] : factorize(M)) {
    if (p == 2) {
      two_exp = e;
    } else if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
      if (e % 2 != 0) return {};
      base = gmul(base, {pow_int(p, e / 2), 0});
    } else {
      split.push_back({split_prime(p), e});
    }
  }
  base = gmul(base, gpow({1, 1}, two_exp));

  std::vector<GInt> zs{base};
  for (const auto& [pi, e] : split) {
    GInt bar{pi.re, Int(-pi.im)};
    std::vector<GInt> next;
    next.reserve(zs.size() * (e + 1));
    for (const GInt& z : zs)
      for (unsigned s = 0; s <= e; ++s) next.push_back(gmul(z, gmul(gpow(pi, s), gpow(bar, e - s))));
    zs = std::move(next);
  }

  std::vector<CirclePoint> pts;
  pts.reserve(zs.size() * 4);
  for (const GInt& z : zs) {
    pts.push_back({z.re, z.im, M});
    pts.push_back({Int(-z.im), z.re, M});
    pts.push_back({Int(-z.re), Int(-z.im), M});
    pts.push_back({z.im, Int(-z.re), M});
  }
  std::sort(pts.begin(), pts.end(), angle_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

ArcCluster max_arc_cluster(const Int& M, double arc_length) {
  if (!(arc_length > 0))
    throw std::invalid_argument("max_arc_cluster: arc_length must be positive");
  ArcCluster out;
  out.M = M;
  std::vector<CirclePoint> pts = two_square_reps(M);
  if (pts.empty()) return out;
  const std::size_t n = pts.size();
  std::vector<long double> th = angles_of(pts);
  auto th_at = [&](std::size_t t) { return t < n ? th[t] : th[t - n] + kTwoPi; };

  const long double budget = static_cast<long double>(arc_length) / sqrtl(to_ld(M));
  std::size_t best_i = 0, best_cnt = 0;
  long double best_ext = 0;
  for (std::size_t i = 0, j = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j + 1 < i + n && th_at(j + 1) - th[i] <= budget) ++j;
    std::size_t cnt = j - i + 1;
    if (cnt > best_cnt) {  // strict: ties keep the smallest starting angle
      best_cnt = cnt;
      best_i = i;
      best_ext = th_at(j) - th[i];
    }
  }
  for (std::size_t t = best_i; t < best_i + best_cnt; ++t) out.points.push_back(pts[t % n]);
  out.arc_length = static_cast<double>(best_ext * sqrtl(to_ld(M)));
  return out;
}

namespace {

struct ArcShard {
  bool has = false;
  double worst_exp = 0.0;
  std::uint64_t worst_m = 0;
  std::size_t worst_start = 0;
  long double worst_ext = 0.0;
  std::uint64_t checked = 0, viol = 0, ambig = 0;
};

}  // namespace

ArcBoundReport arc_bound_verify(std::uint64_t m_max, unsigned k, unsigned threads) {
  if (m_max < 2) throw std::invalid_argument("arc_bound_verify: need m_max >= 2");
  if (k < 2 || k > 5) throw std::invalid_argument("arc_bound_verify: need 2 <= k <= 5");
  Rat exp_rat = Rat(1, 2) - Rat(1, static_cast<unsigned long>(4 * (k / 2) + 2));
  exp_rat.canonicalize();
  const long double e_ld = to_ld(Int(exp_rat.get_num())) / to_ld(Int(exp_rat.get_den()));

  auto body = [&](ArcShard& sh, std::uint64_t m) {
    std::vector<CirclePoint> pts = two_square_reps(Int(static_cast<unsigned long>(m)));
    const std::size_t n = pts.size();
    if (n < k + 1) return;
    std::vector<long double> th = angles_of(pts);
    auto th_at = [&](std::size_t t) { return t < n ? th[t] : th[t - n] + kTwoPi; };
    const long double R = sqrtl(static_cast<long double>(m));
    const long double L = powl(static_cast<long double>(m), e_ld / 2);  // R^e
    const long double log_r = logl(R);
    for (std::size_t i = 0; i < n; ++i) {
      long double ext = th_at(i + k) - th[i];
      long double arc = ext * R;
      ++sh.checked;
      bool violation;
      if (fabsl(arc - L) <= 1e-9L * std::max<long double>(1.0L, L)) {
        // Exact re-adjudication: compare the integer chord of the window
        // extremes against the bracketed threshold chord 2R sin(L/2R).
        const CirclePoint& pa = pts[i];
        const CirclePoint& pb = pts[(i + k) % n];
        Int chord2 = (pa.x - pb.x) * (pa.x - pb.x) + (pa.y - pb.y) * (pa.y - pb.y);
        long double t2 = 4.0L * static_cast<long double>(m) * sinl(L / (2 * R)) * sinl(L / (2 * R));
        long double c2 = to_ld(chord2);
        if (c2 < t2 * (1.0L - 2e-15L)) {
          violation = true;
        } else if (c2 > t2 * (1.0L + 2e-15L)) {
          violation = false;
        } else {
          ++sh.ambig;
          violation = false;
        }
      } else {
        violation = arc < L;
      }
      if (violation) ++sh.viol;
      if (m > 1) {
        double e = static_cast<double>(logl(arc) / log_r);
        if (!sh.has || e < sh.worst_exp) {
          sh.has = true;
          sh.worst_exp = e;
          sh.worst_m = m;
          sh.worst_start = i;
          sh.worst_ext = ext;
        }
      }
    }
  };
  auto merge = [](ArcShard& total, const ArcShard& sh) {
    total.checked += sh.checked;
    total.viol += sh.viol;
    total.ambig += sh.ambig;
    if (sh.has && (!total.has || sh.worst_exp < total.worst_exp)) {
      total.has = sh.has;
      total.worst_exp = sh.worst_exp;
      total.worst_m = sh.worst_m;
      total.worst_start = sh.worst_start;
      total.worst_ext = sh.worst_ext;
    }
  };
  ArcShard total = parallel_reduce(1, m_max + 1, resolve_threads(threads), ArcShard{}, body, merge);

  ArcBoundReport out;
  out.threshold_exponent = exp_rat;
  out.clusters_checked = total.checked;
  out.violations = total.viol;
  out.ambiguous = total.ambig;
  out.ok = total.viol == 0;
  out.worst_exponent = total.worst_exp;
  if (total.has) {
    Int m(static_cast<unsigned long>(total.worst_m));
    std::vector<CirclePoint> pts = two_square_reps(m);
    out.worst.M = m;
    for (std::size_t t = total.worst_start; t <= total.worst_start + k; ++t)
      out.worst.points.push_back(pts[t % pts.size()]);
    out.worst.arc_length =
        static_cast<double>(total.worst_ext * sqrtl(static_cast<long double>(total.worst_m)));
  }
  return out;
}

namespace {

// F(m) for any sign of m, with F(-m) = (-1)^(m+1) F(m).
Int fib(long m) {
  if (m >= 0) {
    Int f;
    mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return f;
  }
  Int f = fib(-m);
  return (-m) % 2 != 0 ? f : Int(-f);
}

// G(m) = (-1)^(m+1) F(m).
Int gfib(long m) {
  Int f = fib(m);
  return m % 2 != 0 ? f : Int(-f);
}

double separation(const std::vector<CirclePoint>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Int d2 = (pts[i].x - pts[j].x) * (pts[i].x - pts[j].x) +
               (pts[i].y - pts[j].y) * (pts[i].y - pts[j].y);
      best = std::max(best, std::sqrt(to_double(d2)));
    }
  return best;
}

}  // namespace

FamilyReport family_points(FamilyKind family, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("family_points: need n >= 1");
  const long ln = static_cast<long>(n);
  FamilyReport out;
  if (family == FamilyKind::pair) {
    Int nn(static_cast<unsigned long>(n));
    out.M = 2 * nn * nn + 2 * nn + 1;
    out.points = {{nn, Int(nn + 1), out.M}, {Int(nn + 1), nn, out.M}};
    out.model_length = std::sqrt(2.0);
  } else if (family == FamilyKind::triple) {
    Int nn(static_cast<unsigned long>(n));
    Int n2 = nn * nn, n3 = n2 * nn;
    out.M = 16 * n3 * n3 + 4 * n2 * n2 + 4 * n2 + 1;
    out.points = {{Int(4 * n3 - 1), Int(2 * n2 + 2 * nn), out.M},
                  {Int(4 * n3), Int(2 * n2 + 1), out.M},
                  {Int(4 * n3 + 1), Int(2 * n2 - 2 * nn), out.M}};
    out.model_length = static_cast<double>(cbrtl(16.0L * sqrtl(to_ld(out.M))));
  } else {
    Int x0 = fib(3 * ln) / 2, y0 = fib(3 * ln - 3) / 2;
    Int prod = 5 * fib(2 * ln - 3) * fib(2 * ln - 1) * fib(2 * ln + 1);
    out.M = prod / 2;
    out.points = {{Int(x0 - 2 * gfib(ln - 2)), Int(y0 - 2 * gfib(ln + 1)), out.M},
                  {Int(x0 + gfib(ln - 3)), Int(y0 + gfib(ln)), out.M},
                  {Int(x0 + gfib(ln - 2)), Int(y0 + gfib(ln + 1)), out.M},
                  {Int(x0 - gfib(ln - 1)), Int(y0 - gfib(ln + 2)), out.M}};
    out.model_length = static_cast<double>(cbrtl(40.0L + 20.0L * sqrtl(5.0L)) *
                                           cbrtl(sqrtl(to_ld(out.M))));
  }
  for (const CirclePoint& p : out.points)
    if (p.x * p.x + p.y * p.y != out.M)
      throw std::logic_error("family_points: (" + to_string(p.x) + ", " + to_string(p.y) +
                             ") is not on circle " + to_string(out.M));
  out.extreme_separation = family == FamilyKind::pair ? std::sqrt(2.0) : separation(out.points);
  return out;
}

}  // namespace squarelab
