#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "squarelab/int_types.hpp"

namespace squarelab {

// f(theta) = sum over terms of a_k * e(n_k * theta), frequencies distinct
// nonnegative integers, at least one nonzero coefficient.
struct TrigPolySpec {
  std::map<std::uint64_t, Rat> terms;
};

struct WindowEnergyReport {
  std::uint64_t N = 0;
  std::uint64_t Delta = 0;
  Int l4_fourth;          // exact, unit coefficients on {k^2 : N <= k <= N+Delta}
  double model = 0;       // Delta^2 + Delta^3 * ln(N) / N
  double ratio = 0;       // l4_fourth / model
  double logn_over_n = 0; // both candidate width thresholds, reported side by side
  double n_over_logn = 0;
};

TrigPolySpec make_unit_spec(const std::vector<std::uint64_t>& freqs);

// Parseval: sum of squared coefficients, exact.
Rat l2_squared(const TrigPolySpec& f);

// Fourth power of the L4 norm via exact additive self-convolution of the
// coefficient map (never quadrature).
Rat l4_fourth_exact(const TrigPolySpec& f);

// Composite-midpoint estimate of the L^p norm.  Requires
// grid_points >= 4 * max frequency; throws naming the minimum otherwise.
double lp_norm_quadrature(const TrigPolySpec& f, double p, std::uint64_t grid_points);

// Fejer kernel of order N at theta in [0,1), closed real form
// (1/N) * (sin(N pi theta) / sin(pi theta))^2, with the limit value N taken
// below |sin(pi theta)| < 1e-9.
double fejer_eval(std::uint64_t N, double theta);

// Window experiment on E = {k^2 : N <= k <= N + Delta}: exact fourth-power
// energy against the model Delta^2 + Delta^3 ln(N)/N.  0 <= Delta <= N.
WindowEnergyReport window_energy(std::uint64_t N, std::uint64_t Delta);

}  // namespace squarelab
