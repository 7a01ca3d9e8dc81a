#include "squarelab/core_arith.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace squarelab {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
        composite[static_cast<std::size_t>(j)] = true;
    }
    return primes;
  }();
  return table;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n <= 1'000'000) {
    const auto& table = small_primes();
    return std::binary_search(table.begin(), table.end(),
                              static_cast<std::uint32_t>(n.get_ui()));
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime_above(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Int> is_square(const Int& v) {
  if (v < 0) return std::nullopt;
  if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

std::optional<Rat> rational_square_root(const Rat& q) {
  std::optional<Int> num = is_square(Int(q.get_num()));
  if (!num) return std::nullopt;
  std::optional<Int> den = is_square(Int(q.get_den()));
  if (!den) return std::nullopt;
  Rat root(*num, *den);
  root.canonicalize();
  return root;
}

namespace {

// One Brent-cycle attempt with pseudo-map x^2 + c; returns a nontrivial
// factor or nullopt once the iteration budget is exhausted.
std::optional<Int> brent_attempt(const Int& n, unsigned long c, std::uint64_t& budget) {
  Int y = 2, r = 1, q = 1, g = 1, x = 2, ys = 2;
  const unsigned long batch = 128;
  while (g == 1) {
    x = y;
    for (Int i = 0; i < r; ++i) {
      if (budget == 0) return std::nullopt;
      --budget;
      y = (y * y + c) % n;
    }
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      Int steps = r - k;
      if (steps > batch) steps = batch;
      for (Int i = 0; i < steps; ++i) {
        if (budget == 0) return std::nullopt;
        --budget;
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += batch;
    }
    r *= 2;
  }
  if (g == n) {
    // Backtrack one step at a time to recover the factor lost in batching.
    do {
      if (budget == 0) return std::nullopt;
      --budget;
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;  // cycle degenerate for this c
  return g;
}

// Splits composite n (no factors in the small-prime table) into primes.
bool split_recursive(const Int& n, Factorization& out, std::uint64_t& budget) {
  if (n == 1) return true;
  if (is_prime(n)) {
    out.emplace_back(n, 1u);
    return true;
  }
  if (auto root = is_square(n)) {
    Factorization sub;
    if (!split_recursive(*root, sub, budget)) return false;
    for (auto& [p, e] : sub) out.emplace_back(p, 2 * e);
    return true;
  }
  for (unsigned long c = 1;; ++c) {
    if (budget == 0) return false;
    auto g = brent_attempt(n, c, budget);
    if (g) return split_recursive(*g, out, budget) && split_recursive(n / *g, out, budget);
    if (budget == 0) return false;
  }
}

std::optional<Factorization> factorize_with_budget(const Int& n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("factorize: argument must be >= 1");
  Factorization out;
  Int rest = n;
  bool fits = mpz_fits_ulong_p(rest.get_mpz_t()) != 0;
  std::uint64_t rest64 = fits ? rest.get_ui() : 0;
  for (std::uint32_t p : small_primes()) {
    if (fits) {
      if (static_cast<std::uint64_t>(p) * p > rest64) break;
      if (rest64 % p == 0) {
        unsigned e = 0;
        do {
          rest64 /= p;
          ++e;
        } while (rest64 % p == 0);
        out.emplace_back(Int(p), e);
      }
    } else if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      out.emplace_back(Int(p), e);
      if (mpz_fits_ulong_p(rest.get_mpz_t()) != 0) {
        fits = true;
        rest64 = rest.get_ui();
      }
    }
  }
  if (fits) rest = Int(static_cast<unsigned long>(rest64));
  if (rest > 1) {
    Factorization tail;
    if (!split_recursive(rest, tail, budget)) return std::nullopt;
    std::sort(tail.begin(), tail.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge equal primes produced by independent recursive branches.
    for (auto& [p, e] : tail) {
      if (!out.empty() && out.back().first == p)
        out.back().second += e;
      else
        out.emplace_back(p, e);
    }
  }
  return out;
}

}  // namespace

Factorization factorize(const Int& n) {
  auto f = factorize_with_budget(n, std::numeric_limits<std::uint64_t>::max());
  return *f;
}

std::optional<Factorization> try_factorize(const Int& n, std::uint64_t budget) {
  return factorize_with_budget(n, budget);
}

Int factor_product(const Factorization& f) {
  Int r = 1;
  for (const auto& [p, e] : f) r *= pow_int(p, e);
  return r;
}

Int radical(const Int& n) {
  Int r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::invalid_argument("mod_inverse: argument not invertible modulo " + to_string(m));
  return r;
}

namespace {

Int pow_mod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Tonelli–Shanks: square root of unit u modulo odd prime p, empty if u is a
// non-residue.
std::optional<Int> sqrt_mod_odd_prime(const Int& u, const Int& p) {
  Int a = mod_positive(u, p);
  if (a == 0) return Int(0);
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  // p = 1 (mod 4): full Tonelli–Shanks with the least non-residue as helper.
  Int q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  Int m(static_cast<long>(s)), c = pow_mod(z, q, p), t = pow_mod(a, q, p),
      r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    Int t2 = t;
    long i = 0;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// Unit square roots modulo p^m, gcd(u, p) = 1; the complete solution set.
std::vector<Int> unit_sqrt_mod_prime_power(const Int& u, const Int& p, unsigned m) {
  Int q = pow_int(p, m);
  Int a = mod_positive(u, q);
  std::vector<Int> roots;
  if (p == 2) {
    if (m == 1) return {Int(1)};
    if (m == 2) {
      if (a % 4 == 1) return {Int(1), Int(3)};
      return {};
    }
    if (a % 8 != 1) return {};
    // Lift 1 from mod 8 upward: at modulus 2^j either y or y + 2^{j-1} works.
    Int y = 1;
    for (unsigned j = 3; j < m; ++j) {
      Int mod_next = pow_int(Int(2), j + 1);
      if ((y * y - a) % mod_next != 0) y += pow_int(Int(2), j - 1);
    }
    Int half = q / 2;
    roots = {y, q - y, mod_positive(y + half, q), mod_positive(q - y + half, q)};
  } else {
    auto y0 = sqrt_mod_odd_prime(a, p);
    if (!y0) return {};
    // Newton/Hensel doubling: y <- y - (y^2 - a) / (2y) modulo p^(2^t).
    Int y = *y0;
    Int cur = p;
    while (cur < q) {
      cur = cur * cur;
      if (cur > q) cur = q;
      Int inv = mod_inverse(2 * y % cur, cur);
      y = mod_positive(y - (y * y - a) * inv, cur);
    }
    y = mod_positive(y, q);
    roots = {y, mod_positive(q - y, q)};
    if (roots[0] == roots[1]) roots.pop_back();
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

ResidueSet sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e) {
  if (e == 0) throw std::invalid_argument("sqrt_mod_prime_power: exponent must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument("sqrt_mod_prime_power: modulus base not prime");
  Int q = pow_int(p, e);
  Int a0 = mod_positive(a, q);
  ResidueSet out{q, {}};
  if (a0 == 0) {
    // x^2 = 0 (mod p^e) means p^ceil(e/2) | x.
    Int step = pow_int(p, (e + 1) / 2);
    for (Int x = 0; x < q; x += step) out.residues.push_back(x);
    return out;
  }
  unsigned v = 0;
  Int u = a0;
  while (u % p == 0) {
    u /= p;
    ++v;
  }
  if (v % 2 == 1) return out;  // odd valuation: no solutions
  unsigned w = v / 2, m = e - v;
  auto ys = unit_sqrt_mod_prime_power(u, p, m);
  if (ys.empty()) return out;
  // x = p^w * (y + t * p^m) for t in [0, p^w).
  Int pw = pow_int(p, w), pm = pow_int(p, m);
  for (const Int& y : ys)
    for (Int t = 0; t < pw; ++t) out.residues.push_back(pw * (y + t * pm));
  std::sort(out.residues.begin(), out.residues.end());
  return out;
}

std::pair<Int, Int> crt_combine(const std::vector<std::pair<Int, Int>>& congruences) {
  Int r = 0, m = 1;
  for (const auto& [ri, mi] : congruences) {
    if (mi < 1) throw std::invalid_argument("crt_combine: modulus must be >= 1");
    if (gcd(m, mi) != 1)
      throw std::invalid_argument("crt_combine: moduli not pairwise coprime (" + to_string(mi) +
                                  ")");
    Int diff = mod_positive(ri - r, mi);
    Int lift = diff * mod_inverse(mod_positive(m, mi), mi) % mi;
    r += m * lift;
    m *= mi;
    r = mod_positive(r, m);
  }
  return {r, m};
}

}  // namespace squarelab
