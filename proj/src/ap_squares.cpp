#include "squarelab/ap_squares.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "squarelab/parallel.hpp"

namespace squarelab {

namespace {

// Quadratic-residue tables modulo 64, 63, 65, 11.  The moduli are pairwise
// coprime with product 2882880, and together they pass only ~0.84% of
// uniformly random non-squares on to the exact root test.
struct ResidueTables {
  std::array<bool, 64> m64{};
  std::array<bool, 63> m63{};
  std::array<bool, 65> m65{};
  std::array<bool, 11> m11{};
  ResidueTables() {
    for (unsigned x = 0; x < 64; ++x) m64[x * x % 64] = true;
    for (unsigned x = 0; x < 63; ++x) m63[x * x % 63] = true;
    for (unsigned x = 0; x < 65; ++x) m65[x * x % 65] = true;
    for (unsigned x = 0; x < 11; ++x) m11[x * x % 11] = true;
  }
  bool pass(unsigned r64, unsigned r63, unsigned r65, unsigned r11) const {
    return m64[r64] && m63[r63] && m65[r65] && m11[r11];
  }
};

const ResidueTables& tables() {
  static const ResidueTables t;
  return t;
}

std::uint64_t isqrt_u64(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > v) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

bool is_square_u64(std::uint64_t v) {
  if (!tables().m64[v % 64]) return false;
  std::uint64_t r = isqrt_u64(v);
  return r * r == v;
}

}  // namespace

ApSquareReport squares_in_ap(const Int& a, const Int& b, std::uint64_t k) {
  if (a < 1 || b < 1 || k < 1)
    throw std::invalid_argument("squares_in_ap: need a, b, k >= 1");
  const ResidueTables& t = tables();
  ApSquareReport rep;
  rep.a = a;
  rep.b = b;
  rep.k = k;

  unsigned a64 = mpz_fdiv_ui(a.get_mpz_t(), 64), b64 = mpz_fdiv_ui(b.get_mpz_t(), 64);
  unsigned a63 = mpz_fdiv_ui(a.get_mpz_t(), 63), b63 = mpz_fdiv_ui(b.get_mpz_t(), 63);
  unsigned a65 = mpz_fdiv_ui(a.get_mpz_t(), 65), b65 = mpz_fdiv_ui(b.get_mpz_t(), 65);
  unsigned a11 = mpz_fdiv_ui(a.get_mpz_t(), 11), b11 = mpz_fdiv_ui(b.get_mpz_t(), 11);
  unsigned r64 = a64, r63 = a63, r65 = a65, r11 = a11;
  auto step = [&] {
    r64 += b64;
    if (r64 >= 64) r64 -= 64;
    r63 += b63;
    if (r63 >= 63) r63 -= 63;
    r65 += b65;
    if (r65 >= 65) r65 -= 65;
    r11 += b11;
    if (r11 >= 11) r11 -= 11;
  };

  Int last = a + Int(k) * b;
  if (mpz_fits_ulong_p(last.get_mpz_t()) && sizeof(unsigned long) == 8) {
    std::uint64_t av = mpz_get_ui(a.get_mpz_t()), bv = mpz_get_ui(b.get_mpz_t());
    std::uint64_t cur = av;
    for (std::uint64_t i = 1; i <= k; ++i) {
      cur += bv;
      step();
      if (t.pass(r64, r63, r65, r11) && is_square_u64(cur)) rep.hit_indices.push_back(i);
    }
  } else {
    Int cur = a;
    for (std::uint64_t i = 1; i <= k; ++i) {
      cur += b;
      step();
      if (t.pass(r64, r63, r65, r11) && mpz_perfect_square_p(cur.get_mpz_t()))
        rep.hit_indices.push_back(i);
    }
  }
  rep.count = rep.hit_indices.size();
  return rep;
}

ApSquareReport sigma_lower_search(std::uint64_t k, std::uint64_t a_max,
                                  std::uint64_t b_max, unsigned threads) {
  if (k < 1 || a_max < 1 || b_max < 1)
    throw std::invalid_argument("sigma_lower_search: need k, a_max, b_max >= 1");
  // Parallel over b so the shard-order merge preserves the smallest-(b, a)
  // tie-break exactly.
  auto better = [](const ApSquareReport& cand, const ApSquareReport& best) {
    if (best.k == 0) return true;  // unset sentinel
    return cand.count > best.count;
  };
  auto body = [&](ApSquareReport& acc, std::uint64_t b) {
    for (std::uint64_t a = 1; a <= a_max; ++a) {
      ApSquareReport rep = squares_in_ap(Int(static_cast<unsigned long>(a)),
                                         Int(static_cast<unsigned long>(b)), k);
      if (better(rep, acc)) acc = std::move(rep);
    }
  };
  auto merge = [&](ApSquareReport& total, const ApSquareReport& shard) {
    if (shard.k != 0 && better(shard, total)) total = shard;
  };
  return parallel_reduce(1, b_max + 1, resolve_threads(threads), ApSquareReport{},
                         body, merge);
}

std::vector<std::array<Int, 4>> fermat_four_term_check(std::uint64_t limit) {
  std::vector<std::array<Int, 4>> witnesses;
  // s1 < s2 = y^2 < s3 = z^2 < s4 with common difference d = z^2 - y^2:
  // s1 = 2y^2 - z^2 >= 0 forces y >= z/sqrt(2), and s4 = 2z^2 - y^2 <= limit.
  std::uint64_t z_max = isqrt_u64(limit);
  for (std::uint64_t z = 2; z <= z_max; ++z) {
    unsigned __int128 zz = static_cast<unsigned __int128>(z) * z;
    std::uint64_t y_lo = isqrt_u64(static_cast<std::uint64_t>(zz / 2));
    if (y_lo < 1) y_lo = 1;
    for (std::uint64_t y = y_lo; y < z; ++y) {
      unsigned __int128 yy = static_cast<unsigned __int128>(y) * y;
      if (2 * yy < zz) continue;  // s1 would be negative
      std::uint64_t s1 = static_cast<std::uint64_t>(2 * yy - zz);
      unsigned __int128 s4w = 2 * zz - yy;
      if (s4w > limit) continue;
      auto s4 = static_cast<std::uint64_t>(s4w);
      if (is_square_u64(s1) && is_square_u64(s4)) {
        witnesses.push_back({Int(static_cast<unsigned long>(s1)),
                             Int(static_cast<unsigned long>(yy)),
                             Int(static_cast<unsigned long>(zz)),
                             Int(static_cast<unsigned long>(s4))});
      }
    }
  }
  return witnesses;
}

ProgressionBenchmark benchmark_progression(std::uint64_t k) {
  if (k < 8) throw std::invalid_argument("benchmark_progression: need k >= 8");
  ProgressionBenchmark out;
  out.count = squares_in_ap(49, 24, k).count;
  out.model = std::sqrt(8.0 * static_cast<double>(k) / 3.0);
  out.deviation = static_cast<double>(out.count) - out.model;
  return out;
}

}  // namespace squarelab
