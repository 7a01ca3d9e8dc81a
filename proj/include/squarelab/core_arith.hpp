#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// Prime factorization as a list of (prime, exponent), primes ascending.
using Factorization = std::vector<std::pair<Int, unsigned>>;

// A modulus together with the sorted set of residues in [0, modulus).
struct ResidueSet {
  Int modulus;
  std::vector<Int> residues;
};

// Factors n >= 1: trial division over a fixed prime table, then Brent-cycle
// splitting with a deterministic seed schedule on the remaining cofactor.
// factorize(1) == {}.
Factorization factorize(const Int& n);

// Same, but gives up (nullopt) once the cycle-iteration budget is spent.
std::optional<Factorization> try_factorize(const Int& n, std::uint64_t budget);

// Reassembles prod p^e.
Int factor_product(const Factorization& f);

// Product of the distinct prime divisors; radical(1) == 1.
Int radical(const Int& n);

// Deterministic-for-this-range primality (Baillie–PSW + Miller–Rabin rounds).
bool is_prime(const Int& n);

// Smallest prime strictly greater than n.
Int next_prime_above(const Int& n);

// Exact square root when v is a perfect square; empty otherwise (and for v<0).
std::optional<Int> is_square(const Int& v);

// Exact nonnegative square root of a rational, when one exists: both the
// numerator and denominator of the canonical form must be perfect squares.
std::optional<Rat> rational_square_root(const Rat& q);

// All x in [0, p^e) with x^2 = a (mod p^e); handles every a, including
// gcd(a, p) > 1 and a = 0 (mod p^e).
ResidueSet sqrt_mod_prime_power(const Int& a, const Int& p, unsigned e);

// Combines pairwise-coprime congruences x = r_i (mod m_i) into (r, prod m_i).
// Throws std::invalid_argument when two moduli share a factor.
std::pair<Int, Int> crt_combine(const std::vector<std::pair<Int, Int>>& congruences);

// Modular inverse; throws std::invalid_argument when gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

// Shared prime table for trial division (all primes <= 1e6).
const std::vector<std::uint32_t>& small_primes();

}  // namespace squarelab
