#include "squarelab/trig_norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace squarelab {

namespace {

std::vector<std::pair<std::uint64_t, Rat>> checked_terms(const TrigPolySpec& f) {
  std::vector<std::pair<std::uint64_t, Rat>> terms;
  for (const auto& [freq, coeff] : f.terms)
    if (coeff != 0) terms.emplace_back(freq, coeff);
  if (terms.empty())
    throw std::invalid_argument("trig polynomial needs at least one nonzero coefficient");
  return terms;
}

}  // namespace

TrigPolySpec make_unit_spec(const std::vector<std::uint64_t>& freqs) {
  TrigPolySpec f;
  for (auto n : freqs) {
    if (f.terms.count(n)) throw std::invalid_argument("make_unit_spec: repeated frequency");
    f.terms[n] = Rat(1);
  }
  return f;
}

Rat l2_squared(const TrigPolySpec& f) {
  Rat total = 0;
  for (const auto& [freq, coeff] : checked_terms(f)) total += coeff * coeff;
  return total;
}

Rat l4_fourth_exact(const TrigPolySpec& f) {
  auto terms = checked_terms(f);
  bool unit = std::all_of(terms.begin(), terms.end(),
                          [](const auto& t) { return t.second == 1; });
  if (unit) {
    // Integer path: counts of ordered pairs sharing a sum, then sum counts^2.
    std::vector<std::uint64_t> sums;
    sums.reserve(terms.size() * terms.size());
    for (const auto& [na, ca] : terms)
      for (const auto& [nb, cb] : terms) sums.push_back(na + nb);
    std::sort(sums.begin(), sums.end());
    Int total = 0;
    for (std::size_t i = 0; i < sums.size();) {
      std::size_t j = i;
      while (j < sums.size() && sums[j] == sums[i]) ++j;
      total += Int(static_cast<unsigned long>(j - i)) * static_cast<unsigned long>(j - i);
      i = j;
    }
    return Rat(total);
  }
  // General rationals: accumulate coefficient of each convolution frequency.
  std::map<std::uint64_t, Rat> conv;
  for (const auto& [na, ca] : terms)
    for (const auto& [nb, cb] : terms) conv[na + nb] += ca * cb;
  Rat total = 0;
  for (const auto& [m, c] : conv) total += c * c;
  return total;
}

double lp_norm_quadrature(const TrigPolySpec& f, double p, std::uint64_t grid_points) {
  auto terms = checked_terms(f);
  if (p < 1) throw std::invalid_argument("lp_norm_quadrature: p must be >= 1");
  std::uint64_t max_freq = 0;
  for (const auto& [n, c] : terms) max_freq = std::max(max_freq, n);
  std::uint64_t required = 4 * max_freq;
  if (grid_points < std::max<std::uint64_t>(required, 1))
    throw std::invalid_argument("lp_norm_quadrature: grid too coarse, need at least " +
                                std::to_string(std::max<std::uint64_t>(required, 1)) +
                                " points");
  std::vector<std::pair<long double, long double>> coeffs;  // (freq, coeff)
  coeffs.reserve(terms.size());
  for (const auto& [n, c] : terms)
    coeffs.emplace_back(static_cast<long double>(n), static_cast<long double>(c.get_d()));
  long double acc = 0;
  const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
  for (std::uint64_t i = 0; i < grid_points; ++i) {
    long double theta = (static_cast<long double>(i) + 0.5L) / grid_points;
    long double re = 0, im = 0;
    for (const auto& [n, c] : coeffs) {
      long double ang = two_pi * n * theta;
      re += c * std::cos(ang);
      im += c * std::sin(ang);
    }
    long double mod = std::sqrt(re * re + im * im);
    acc += std::pow(mod, static_cast<long double>(p));
  }
  acc /= grid_points;
  return static_cast<double>(std::pow(acc, 1.0L / p));
}

double fejer_eval(std::uint64_t N, double theta) {
  if (N < 1) throw std::invalid_argument("fejer_eval: order must be >= 1");
  const long double pi = 3.14159265358979323846264338327950288L;
  long double s = std::sin(pi * static_cast<long double>(theta));
  if (std::fabs(static_cast<double>(s)) < 1e-9) return static_cast<double>(N);
  long double num = std::sin(static_cast<long double>(N) * pi * static_cast<long double>(theta));
  long double v = num * num / (s * s) / N;
  return static_cast<double>(v);
}

WindowEnergyReport window_energy(std::uint64_t N, std::uint64_t Delta) {
  if (N < 2) throw std::invalid_argument("window_energy: N must be >= 2");
  if (Delta > N) throw std::invalid_argument("window_energy: Delta must be <= N");
  std::vector<std::uint64_t> freqs;
  for (std::uint64_t k = N; k <= N + Delta; ++k) freqs.push_back(k * k);
  WindowEnergyReport r;
  r.N = N;
  r.Delta = Delta;
  r.l4_fourth = l4_fourth_exact(make_unit_spec(freqs)).get_num();
  double dN = static_cast<double>(N), dD = static_cast<double>(Delta);
  r.model = dD * dD + dD * dD * dD * std::log(dN) / dN;
  if (Delta == 0) r.model = 1.0;  // single frequency: the trivial scale
  r.ratio = to_double(r.l4_fourth) / r.model;
  r.logn_over_n = std::log(dN) / dN;
  r.n_over_logn = dN / std::log(dN);
  return r;
}

}  // namespace squarelab
