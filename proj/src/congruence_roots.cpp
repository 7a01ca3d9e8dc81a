#include "squarelab/congruence_roots.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "squarelab/parallel.hpp"

namespace squarelab {

namespace {

// Local roots of the congruence modulo one prime power q = p^e.
std::vector<Int> local_roots(const OmegaSpec& spec, const Int& p, unsigned e, const Int& q) {
  if (spec.kind == OmegaKind::x_squared_minus_a) {
    return sqrt_mod_prime_power(mod_positive(spec.a, q), p, e).residues;
  }
  // x(x-1): both 0 and 1 are simple roots (derivative is a unit), so they
  // lift uniquely to every prime power.
  (void)p;
  (void)e;
  (void)q;
  return {Int(0), Int(1)};
}

std::vector<Int> combine_crt(const std::vector<Int>& acc, const Int& m,
                             const std::vector<Int>& local, const Int& q) {
  std::vector<Int> out;
  out.reserve(acc.size() * local.size());
  for (const Int& r : acc)
    for (const Int& s : local)
      out.push_back(crt_combine({{r, m}, {s, q}}).first);
  return out;
}

}  // namespace

ResidueSet root_set(const OmegaSpec& spec) {
  if (spec.modulus < 2) throw std::invalid_argument("root_set: modulus must be >= 2");
  ResidueSet out;
  out.modulus = spec.modulus;
  std::vector<Int> acc = {Int(0)};
  Int m = 1;
  for (const auto& [p, e] : factorize(spec.modulus)) {
    Int q = pow_int(p, e);
    acc = combine_crt(acc, m, local_roots(spec, p, e, q), q);
    m *= q;
  }
  std::sort(acc.begin(), acc.end());
  out.residues = std::move(acc);
  return out;
}

ResidueSet root_set_monic(const std::vector<Int>& coeffs, const Int& modulus) {
  if (modulus < 2) throw std::invalid_argument("root_set_monic: modulus must be >= 2");
  if (coeffs.size() < 2 || coeffs.back() != 1)
    throw std::invalid_argument("root_set_monic: need a monic polynomial of degree >= 1");
  ResidueSet out;
  out.modulus = modulus;
  std::vector<Int> acc = {Int(0)};
  Int m = 1;
  for (const auto& [p, e] : factorize(modulus)) {
    Int q = pow_int(p, e);
    if (q > 1000000)
      throw std::invalid_argument("root_set_monic: prime power " + to_string(q) +
                                  " exceeds the exhaustive-search cap 1e6");
    std::uint64_t qv = mpz_get_ui(q.get_mpz_t());
    // Horner evaluation over Z/q in machine words.
    std::vector<std::uint64_t> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      c[i] = mpz_fdiv_ui(coeffs[i].get_mpz_t(), static_cast<unsigned long>(qv));
    std::vector<Int> local;
    for (std::uint64_t x = 0; x < qv; ++x) {
      std::uint64_t v = 0;
      for (std::size_t i = coeffs.size(); i-- > 0;)
        v = (static_cast<unsigned __int128>(v) * x + c[i]) % qv;
      if (v == 0) local.push_back(Int(static_cast<unsigned long>(x)));
    }
    acc = combine_crt(acc, m, local, q);
    m *= q;
  }
  std::sort(acc.begin(), acc.end());
  out.residues = std::move(acc);
  return out;
}

ExponentBound alpha_exponent(std::uint64_t d, std::uint64_t k) {
  if (d < 1) throw std::invalid_argument("alpha_exponent: need d >= 1");
  if (k < d) throw std::invalid_argument("alpha_exponent: need k >= d");
  ExponentBound out;
  out.d = d;
  out.k = k;
  out.r = (k + 1) / d;
  out.s = (k + 1) % d;
  Int num = Int(static_cast<unsigned long>(d)) *
                binomial(Int(static_cast<unsigned long>(out.r)), 2) +
            Int(static_cast<unsigned long>(out.r)) * Int(static_cast<unsigned long>(out.s));
  Int den = binomial(Int(static_cast<unsigned long>(k + 1)), 2);
  out.alpha = Rat(num) / Rat(den);
  out.alpha.canonicalize();
  return out;
}

ClusterWitness min_window_with_k_roots(const ResidueSet& omega, std::size_t k) {
  if (k < 2) throw std::invalid_argument("min_window_with_k_roots: need k >= 2");
  if (omega.residues.size() < k)
    throw std::invalid_argument("min_window_with_k_roots: only " +
                                std::to_string(omega.residues.size()) +
                                " residues for a window of " + std::to_string(k));
  std::vector<Int> sorted = omega.residues;
  std::sort(sorted.begin(), sorted.end());
  std::size_t best = 0;
  Int best_span = sorted[k - 1] - sorted[0];
  for (std::size_t i = 1; i + k <= sorted.size(); ++i) {
    Int span = sorted[i + k - 1] - sorted[i];
    if (span < best_span) {  // strict: ties keep the smallest x_1
      best_span = span;
      best = i;
    }
  }
  ClusterWitness w;
  w.n = omega.modulus;
  w.roots.assign(sorted.begin() + static_cast<std::ptrdiff_t>(best),
                 sorted.begin() + static_cast<std::ptrdiff_t>(best + k));
  w.span = best_span;
  w.exponent = std::log(to_double(best_span)) / std::log(to_double(omega.modulus));
  return w;
}

ClusteredModulus construct_clustered_modulus(unsigned k, const Int& prime_floor,
                                             ClusterVariant variant, double epsilon) {
  if (k < 2 || k > 25) throw std::invalid_argument("construct_clustered_modulus: need 2 <= k <= 25");
  if (prime_floor < 2)
    throw std::invalid_argument("construct_clustered_modulus: need prime_floor >= 2");
  if (variant == ClusterVariant::origin && !(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("construct_clustered_modulus: need epsilon in (0, 1]");

  Int floor_eff = prime_floor;
  if (floor_eff < k) floor_eff = k;
  if (variant == ClusterVariant::origin) {
    // a_j = 1 must satisfy |a_j / p_j| < epsilon / (2k), i.e. p_j > 2k/epsilon.
    Int min_p(static_cast<unsigned long>(std::ceil(2.0 * k / epsilon)));
    if (floor_eff < min_p) floor_eff = min_p;
  }

  ClusteredModulus out;
  Int p = floor_eff;
  Int P = 1;
  for (unsigned j = 0; j + 1 < k; ++j) {
    p = next_prime_above(p);
    out.primes.push_back(p);
    P *= p;
  }

  out.coeffs.resize(k);
  std::vector<std::pair<Int, Int>> congruences;
  for (unsigned j = 0; j + 1 < k; ++j) {
    const Int& pj = out.primes[j];
    out.coeffs[j] = variant == ClusterVariant::edge ? Int(pj / k) : Int(1);
    // x_j = a_j * (P/p_j) * p_k must be 1 mod p_j, so p_k = r with
    // r * a_j * (P/p_j) = 1 (mod p_j).
    congruences.push_back({mod_inverse(out.coeffs[j] * (P / pj), pj), pj});
  }
  Int r = crt_combine(congruences).first;

  Int cand = r;
  for (std::uint64_t step = 0;; ++step) {
    if (step > 1000000)
      throw std::runtime_error("construct_clustered_modulus: prime search budget exhausted");
    if (cand > 1 && is_prime(cand)) break;
    cand += P;
  }
  const Int pk = cand;
  out.primes.push_back(pk);
  out.n = P * pk;

  out.x.resize(k);
  for (unsigned j = 0; j + 1 < k; ++j) out.x[j] = out.coeffs[j] * (out.n / out.primes[j]);
  if (variant == ClusterVariant::edge) {
    out.coeffs[k - 1] = mod_inverse(P, pk);
    out.x[k - 1] = out.coeffs[k - 1] * P;
  } else {
    // Signed representative keeps the last root next to the origin.
    Int s = 1;
    for (unsigned j = 0; j + 1 < k; ++j) s -= out.x[j];
    out.x[k - 1] = s;
    mpz_divexact(out.coeffs[k - 1].get_mpz_t(), s.get_mpz_t(), P.get_mpz_t());
  }

  out.omega.modulus = out.n;
  out.omega.residues.reserve(std::size_t(1) << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    Int sum = 0;
    for (unsigned j = 0; j < k; ++j)
      if (mask & (std::uint64_t(1) << j)) sum += out.x[j];
    out.omega.residues.push_back(mod_positive(sum, out.n));
  }
  std::sort(out.omega.residues.begin(), out.omega.residues.end());
  return out;
}

VandermondeCertificate vandermonde_certificate(const std::vector<Int>& x, const Int& a,
                                               const Int& b) {
  if (b < 2) throw std::invalid_argument("vandermonde_certificate: modulus b must be >= 2");
  if (x.empty()) throw std::invalid_argument("vandermonde_certificate: empty root list");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mod_positive(x[i] * x[i] - a, b) != 0)
      throw std::invalid_argument("vandermonde_certificate: x[" + std::to_string(i) + "] = " +
                                  to_string(x[i]) + " violates x^2 = a (mod b)");
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j])
        throw std::invalid_argument("vandermonde_certificate: repeated element x[" +
                                    std::to_string(j) + "] = " + to_string(x[j]));
  }
  VandermondeCertificate cert;
  cert.product = 1;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) cert.product *= x[j] - x[i];
  std::size_t k = x.size();
  cert.divisor = pow_int(b, static_cast<unsigned long>((k - 1) * (k - 1) / 4));
  cert.ok = mpz_divisible_p(cert.product.get_mpz_t(), cert.divisor.get_mpz_t()) != 0;
  return cert;
}

namespace {

struct ScanShard {
  bool has = false;
  double exponent = 0.0;
  std::uint64_t b = 0, a = 0;
  std::vector<std::uint64_t> roots;
  std::uint64_t checked = 0, bound_viol = 0, cert_viol = 0;
  // reusable per-modulus scratch
  std::vector<std::uint64_t> res, cnt, start, order, fill;
  mpz_class big_m, big_acc;
};

}  // namespace

ShortIntervalScan short_interval_scan(std::uint64_t b_max, unsigned k, unsigned threads) {
  if (b_max < 4) throw std::invalid_argument("short_interval_scan: need b_max >= 4");
  if (k < 3) throw std::invalid_argument("short_interval_scan: need k >= 3");
  if (b_max > 10000000)
    throw std::invalid_argument("short_interval_scan: b_max above the 1e7 memory cap");
  const unsigned ell = (k % 2 == 1) ? k : k - 1;
  const unsigned div_exp = (k - 1) * (k - 1) / 4;

  auto body = [&](ScanShard& sh, std::uint64_t b) {
    // Sorted root buckets of x^2 (mod b) for every residue class at once:
    // counting sort keyed by the residue, filled in ascending x.
    sh.res.resize(b);
    sh.cnt.assign(b, 0);
    std::uint64_t r = 0, d = 1;  // r = x^2 mod b, d = (2x+1) mod b
    for (std::uint64_t x = 0; x < b; ++x) {
      sh.res[x] = r;
      ++sh.cnt[r];
      r += d;
      if (r >= b) r -= b;
      d += 2;
      if (d >= b) d -= b;
    }
    sh.start.assign(b + 1, 0);
    for (std::uint64_t a = 0; a < b; ++a) sh.start[a + 1] = sh.start[a] + sh.cnt[a];
    sh.order.resize(b);
    sh.fill.assign(sh.start.begin(), sh.start.end() - 1);
    for (std::uint64_t x = 0; x < b; ++x) sh.order[sh.fill[sh.res[x]]++] = x;

    // span threshold: violation iff span <= floor((b^((ell-1)/2))^(1/ell))
    mpz_class pow_b;
    mpz_ui_pow_ui(pow_b.get_mpz_t(), static_cast<unsigned long>(b), (ell - 1) / 2);
    mpz_class t_mpz;
    mpz_root(t_mpz.get_mpz_t(), pow_b.get_mpz_t(), ell);
    std::uint64_t t = mpz_get_ui(t_mpz.get_mpz_t());

    // Vandermonde divisibility modulus b^div_exp; machine path when
    // modulus * max_factor stays inside 128 bits.
    const bool small_mod = (div_exp + 1) * std::log2(static_cast<double>(b)) < 120.0;
    unsigned __int128 m128 = 1;
    if (small_mod)
      for (unsigned i = 0; i < div_exp; ++i) m128 *= b;
    else
      mpz_ui_pow_ui(sh.big_m.get_mpz_t(), static_cast<unsigned long>(b), div_exp);

    const double log_b = std::log(static_cast<double>(b));
    for (std::uint64_t a = 0; a < b; ++a) {
      std::uint64_t lo = sh.start[a], hi = sh.start[a + 1];
      if (hi - lo < k) continue;
      for (std::uint64_t i = lo; i + k <= hi; ++i) {
        const std::uint64_t* w = sh.order.data() + i;
        std::uint64_t span = w[k - 1] - w[0];
        ++sh.checked;
        if (span <= t) ++sh.bound_viol;
        if (div_exp > 0) {
          if (small_mod) {
            unsigned __int128 acc = 1;
            for (unsigned p = 0; p < k && acc != 0; ++p)
              for (unsigned q = p + 1; q < k; ++q) acc = acc * (w[q] - w[p]) % m128;
            if (acc != 0) ++sh.cert_viol;
          } else {
            sh.big_acc = 1;
            for (unsigned p = 0; p < k; ++p)
              for (unsigned q = p + 1; q < k; ++q) {
                sh.big_acc *= static_cast<unsigned long>(w[q] - w[p]);
                mpz_mod(sh.big_acc.get_mpz_t(), sh.big_acc.get_mpz_t(), sh.big_m.get_mpz_t());
              }
            if (sh.big_acc != 0) ++sh.cert_viol;
          }
        }
        double e = std::log(static_cast<double>(span)) / log_b;
        if (!sh.has || e < sh.exponent) {
          sh.has = true;
          sh.exponent = e;
          sh.b = b;
          sh.a = a;
          sh.roots.assign(w, w + k);
        }
      }
    }
  };
  auto merge = [](ScanShard& total, const ScanShard& sh) {
    total.checked += sh.checked;
    total.bound_viol += sh.bound_viol;
    total.cert_viol += sh.cert_viol;
    if (sh.has && (!total.has || sh.exponent < total.exponent)) {
      total.has = sh.has;
      total.exponent = sh.exponent;
      total.b = sh.b;
      total.a = sh.a;
      total.roots = sh.roots;
    }
  };
  ScanShard total =
      parallel_reduce(2, b_max + 1, resolve_threads(threads), ScanShard{}, body, merge);

  ShortIntervalScan out;
  out.bound_exponent = Rat(static_cast<unsigned long>(ell - 1), static_cast<unsigned long>(2 * ell));
  out.bound_exponent.canonicalize();
  out.clusters_checked = total.checked;
  out.bound_violations = total.bound_viol;
  out.certificate_violations = total.cert_viol;
  if (total.has) {
    out.worst.n = Int(static_cast<unsigned long>(total.b));
    for (std::uint64_t v : total.roots)
      out.worst.roots.push_back(Int(static_cast<unsigned long>(v)));
    out.worst.span = out.worst.roots.back() - out.worst.roots.front();
    out.worst.exponent = total.exponent;
  }
  return out;
}

}  // namespace squarelab
