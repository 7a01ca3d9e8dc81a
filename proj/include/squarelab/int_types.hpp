#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace squarelab {

// Arbitrary-precision integer and rational types used across the library.
using Int = mpz_class;
using Rat = mpq_class;

inline Int make_int(long v) { return Int(v); }

inline Int int_from_string(const std::string& s) { return Int(s); }

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline double to_double(const Int& v) { return v.get_d(); }
inline double to_double(const Rat& v) { return v.get_d(); }

// Exact floor of a/b for integers (mpz division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_positive(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int binomial(const Int& n, unsigned long k) {
  if (n < 0) return 0;
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace squarelab
