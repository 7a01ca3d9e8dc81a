#include "squarelab/abc_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "squarelab/core_arith.hpp"

namespace squarelab {

namespace {

double log_int(const Int& n) {
  signed long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void certify(bool ok, const char* what) {
  if (!ok) {
    throw std::logic_error(std::string("abc_lemma internal check failed: ") +
                           what);
  }
}

// Lagrange weights 1 / prod_{i != j} (nodes_i - nodes_j) at five distinct
// rational nodes.  mpq arithmetic keeps the results canonical.
std::vector<Rat> lagrange_weights(const std::vector<Rat>& nodes) {
  std::vector<Rat> e(5);
  for (int j = 0; j < 5; ++j) {
    Rat prod(1);
    for (int i = 0; i < 5; ++i) {
      if (i != j) prod *= nodes[i] - nodes[j];
    }
    e[j] = Rat(1) / prod;
  }
  return e;
}

// Exact check that sum_j e_j nodes_j^l vanishes for l = 0..3 and equals one
// for l = 4: with five nodes these pin the weights completely, and via
// Newton's identities they force the top four coefficients of the two
// product polynomials to agree while the fifth differs, i.e. the degree
// drops by exactly four.
void certify_moments(const std::vector<Rat>& nodes, const std::vector<Rat>& e) {
  for (int l = 0; l <= 4; ++l) {
    Rat sum(0);
    for (int j = 0; j < 5; ++j) {
      Rat power(1);
      for (int k = 0; k < l; ++k) power *= nodes[j];
      sum += e[j] * power;
    }
    certify(sum == Rat(l == 4 ? 1 : 0), "moment identity");
  }
}

struct ScaledWeights {
  Int L;               // least positive integer clearing all denominators
  std::vector<Int> E;  // L * e_j
};

ScaledWeights scale_to_integers(const std::vector<Rat>& e) {
  ScaledWeights out;
  out.L = 1;
  for (const Rat& w : e) {
    Int den = w.get_den();
    mpz_lcm(out.L.get_mpz_t(), out.L.get_mpz_t(), den.get_mpz_t());
  }
  Int total(0);
  out.E.reserve(5);
  for (const Rat& w : e) {
    Rat scaled = Rat(out.L) * w;
    certify(scaled.get_den() == 1, "scaled weight is integral");
    out.E.push_back(Int(scaled.get_num()));
    total += out.E.back();
  }
  certify(total == 0, "scaled weights sum to zero");
  return out;
}

Int weight_gcd(const std::vector<Int>& E) {
  Int common(0);
  for (const Int& Ej : E) {
    mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), Ej.get_mpz_t());
  }
  return common;
}

// Multiplies the ascending coefficient list by (x + t)^count in place.
void multiply_linear_power(std::vector<Int>& poly, const Int& t,
                           unsigned long count) {
  for (unsigned long step = 0; step < count; ++step) {
    poly.push_back(Int(0));
    for (std::size_t i = poly.size() - 1; i >= 1; --i) {
      poly[i] = poly[i - 1] + t * poly[i];
    }
    poly[0] *= t;
  }
}

std::uint64_t bit_length(const Int& n) {
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

std::optional<Int> bounded_radical(const Int& a, const Int& b, const Int& c) {
  // Factoring is only attempted for modest inputs; the triples built from
  // high-degree products are far beyond any factoring budget.
  if (bit_length(a) + bit_length(b) + bit_length(c) > 4096) {
    return std::nullopt;
  }
  constexpr std::uint64_t kFactorBudget = 1'000'000;
  Int rad(1);
  for (const Int* part : {&a, &b, &c}) {
    std::optional<Factorization> fac = try_factorize(*part, kFactorBudget);
    if (!fac) return std::nullopt;
    for (const auto& [prime, exponent] : *fac) {
      (void)exponent;
      if (mpz_divisible_p(rad.get_mpz_t(), prime.get_mpz_t()) == 0) {
        rad *= prime;
      }
    }
  }
  return rad;
}

}  // namespace

PartialFractionSystem partial_fraction_weights(const std::vector<Int>& t,
                                               long expand_cap) {
  require(t.size() == 5, "exactly five nodes are required");
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      require(t[i] != t[j],
              "nodes must be pairwise distinct; " + to_string(t[i]) +
                  " repeats");
    }
  }

  PartialFractionSystem sys;
  sys.t = t;
  std::vector<Rat> nodes;
  nodes.reserve(5);
  for (const Int& tj : t) nodes.emplace_back(tj);
  sys.e = lagrange_weights(nodes);
  certify_moments(nodes, sys.e);

  ScaledWeights scaled = scale_to_integers(sys.e);
  sys.L = scaled.L;
  sys.E = std::move(scaled.E);
  // With integer nodes every weight numerator is +-1, so E_j = +-L/den_j and
  // the scaled vector is automatically primitive.
  certify(weight_gcd(sys.E) == 1, "integer-node weights are primitive");
  certify(sys.L % 4 == 0, "scaling divisible by four");

  sys.D = 0;
  for (const Int& Ej : sys.E) {
    if (Ej > 0) sys.D += Ej;
  }

  if (expand_cap > 0 && sys.D <= expand_cap) {
    sys.h.assign(1, Int(1));
    sys.g.assign(1, Int(1));
    for (int j = 0; j < 5; ++j) {
      if (sys.E[j] > 0) {
        multiply_linear_power(sys.h, t[j], sys.E[j].get_ui());
      } else {
        multiply_linear_power(sys.g, t[j], Int(-sys.E[j]).get_ui());
      }
    }
    const std::size_t degree = sys.D.get_ui();
    certify(sys.h.size() == degree + 1 && sys.g.size() == degree + 1,
            "both products have degree D");
    certify(sys.h[degree] == 1 && sys.g[degree] == 1, "products are monic");
    for (std::size_t k = 1; k <= 3; ++k) {
      certify(sys.h[degree - k] == sys.g[degree - k],
              "top four coefficients agree");
    }
    sys.f.resize(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) {
      sys.f[k] = sys.h[k] - sys.g[k];
    }
    while (!sys.f.empty() && sys.f.back() == 0) sys.f.pop_back();
    certify(sys.f.size() == degree - 3, "difference has degree D - 4");
    certify(Int(sys.f.back() * 4) == Int(-sys.L),
            "leading difference coefficient is -L/4");
    sys.has_explicit_polynomials = true;
  }
  return sys;
}

AbcConstruction abc_from_square_ap(const Int& A, const Int& B,
                                   const std::vector<Int>& t,
                                   AbcVariant variant, long size_budget_bits) {
  require(B >= 1, "the progression step B must be positive");
  Int common(0);
  mpz_gcd(common.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  require(common == 1, "A and B must be coprime");

  PartialFractionSystem base = partial_fraction_weights(t, 0);

  std::vector<Int> weights_int = base.E;
  if (variant == AbcVariant::reciprocal) {
    for (const Int& tj : t) {
      require(tj != 0, "the reciprocal variant requires nonzero nodes");
    }
    Int prod_t(1);
    for (const Int& tj : t) prod_t *= tj;
    std::vector<Rat> ehat(5);
    std::vector<Rat> recip_nodes(5);
    for (int j = 0; j < 5; ++j) {
      Int cube = t[j] * t[j] * t[j];
      ehat[j] = base.e[j] * Rat(cube) * Rat(prod_t);
      Rat node(1, t[j]);
      node.canonicalize();
      recip_nodes[j] = node;
    }
    std::vector<Rat> independent = lagrange_weights(recip_nodes);
    for (int j = 0; j < 5; ++j) {
      certify(ehat[j] == independent[j],
              "reciprocal weights match the direct computation");
    }
    certify_moments(recip_nodes, ehat);
    ScaledWeights scaled = scale_to_integers(ehat);
    weights_int = std::move(scaled.E);
    // Reciprocal weight numerators can share a factor; use the primitive
    // exponent vector (the moment identities survive the division).
    Int common = weight_gcd(weights_int);
    certify(common >= 1, "weight gcd is positive");
    if (common > 1) {
      for (Int& Ej : weights_int) Ej /= common;
    }
  }

  // Square values along the progression, with every offender reported.
  std::vector<Int> values(5);
  std::vector<Int> roots(5);
  std::string offenders;
  for (int j = 0; j < 5; ++j) {
    values[j] = A + t[j] * B;
    std::optional<Int> root = is_square(values[j]);
    if (root) {
      roots[j] = *root;
    } else {
      offenders += " " + to_string(values[j]);
    }
  }
  require(offenders.empty(),
          "progression values are not all perfect squares; offenders:" +
              offenders);
  for (int j = 0; j < 5; ++j) {
    require(values[j] != 0,
            "a zero value in the progression collapses the construction");
  }

  Int budget(0);
  for (int j = 0; j < 5; ++j) {
    Int weight_mag = abs(weights_int[j]);
    budget += weight_mag * Int(bit_length(values[j]) + 1);
    if (variant == AbcVariant::reciprocal) {
      budget += weight_mag * Int(bit_length(t[j]) + 1);
    }
  }
  require(budget <= size_budget_bits,
          "size budget exceeded: the products would need about " +
              to_string(budget) + " bits (budget " +
              std::to_string(size_budget_bits) + ")");

  Int first(1);
  Int second(1);
  Int power;
  for (int j = 0; j < 5; ++j) {
    Int weight_mag = abs(weights_int[j]);
    certify(mpz_fits_ulong_p(weight_mag.get_mpz_t()) != 0,
            "scaled weight fits a machine word");
    const unsigned long mag = weight_mag.get_ui();
    mpz_pow_ui(power.get_mpz_t(), values[j].get_mpz_t(), mag);
    if (weights_int[j] > 0) {
      first *= power;
    } else {
      second *= power;
    }
    if (variant == AbcVariant::reciprocal) {
      // The opposite side absorbs t_j^|E*_j|, clearing the denominators of
      // the evaluation at the reciprocal nodes.
      mpz_pow_ui(power.get_mpz_t(), t[j].get_mpz_t(), mag);
      if (weights_int[j] > 0) {
        second *= power;
      } else {
        first *= power;
      }
    }
  }
  require(first != second, "the two product sides coincide; no triple");

  Int divisor(0);
  mpz_gcd(divisor.get_mpz_t(), first.get_mpz_t(), second.get_mpz_t());
  std::vector<Int> parts = {Int(abs(first) / divisor),
                            Int(abs(second) / divisor),
                            Int(abs(first - second) / divisor)};
  std::sort(parts.begin(), parts.end());
  certify(parts[0] >= 1, "triple parts are positive");
  certify(parts[0] + parts[1] == parts[2], "triple parts sum correctly");
  Int pair_gcd(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      mpz_gcd(pair_gcd.get_mpz_t(), parts[i].get_mpz_t(),
              parts[j].get_mpz_t());
      certify(pair_gcd == 1, "triple parts are pairwise coprime");
    }
  }

  AbcConstruction out;
  out.triple.a = parts[0];
  out.triple.b = parts[1];
  out.triple.c = parts[2];
  out.triple.rad = bounded_radical(parts[0], parts[1], parts[2]);
  if (out.triple.rad) {
    out.triple.quality = log_int(parts[2]) / log_int(*out.triple.rad);
  }
  out.sqrt_product = 1;
  for (const Int& root : roots) out.sqrt_product *= root;
  out.first_product = first;
  out.second_product = second;
  out.common_divisor = divisor;
  out.exponents = std::move(weights_int);
  return out;
}

AbcTriple abc_quality(const Int& a, const Int& b) {
  require(a >= 1 && b >= 1, "both parts must be positive");
  Int common(0);
  mpz_gcd(common.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  require(common == 1, "the parts must be coprime");

  AbcTriple out;
  out.a = (a < b) ? a : b;
  out.b = (a < b) ? b : a;
  out.c = a + b;
  out.rad = radical(a * b * out.c);
  out.quality = log_int(out.c) / log_int(*out.rad);
  return out;
}

}  // namespace squarelab
