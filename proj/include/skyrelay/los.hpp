// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// How a hop's exponential rate was obtained.
enum class RateMethod {
  ClosedForm,     ///< analytic expression for the height law
  NumericFallback ///< adaptive quadrature: uniform heights with h_a <= h_max, or an ill-conditioned k
};

/// Single-hop LoS probability is exp(-kappa * r_i) for every height law: the
/// critical height is linear in r / r_i, so the blockage integral is r_i times
/// the mean thinned density along the sight line. kappa depends on h_a only.
struct LosClosedForm
{
  double kappa; ///< 1/m
  RateMethod validity;

  [[nodiscard]] double probability(double r_i) const;
};

struct HopLos
{
  double probability;
  LosClosedForm rate;
};

/// Minimum obstacle height that blocks the sight line from a ground device at
/// height h_g to a relay at altitude h_a and horizontal distance r_i, at
/// horizontal distance r from the ground asset.
double critical_height(const Scenario& scenario, double h_a, double r_i, double r);

/// Density of actual blockages at distance r along the hop (thinned Poisson process).
double blockage_density(const Scenario& scenario, double h_a, double r_i, double r);

/// exp(-integral of blockage_density over [0, r_i]) by adaptive Gauss-Kronrod
/// quadrature at relative tolerance 1e-10. Reference oracle for the closed forms.
/// Throws QuadratureError if the tolerance is not met.
double los_prob_single_numeric(const Scenario& scenario, double h_a, double r_i);

/// Rate by quadrature of the survival function over [h_g, h_a]; valid for any height law.
LosClosedForm numeric_rate(const Scenario& scenario, double h_a);

/// Uniform heights. Closed form requires h_a > h_max; below that the rate
/// falls back to quadrature and is flagged NumericFallback.
LosClosedForm uniform_rate(const Scenario& scenario, double h_a);
HopLos los_prob_single_uniform(const Scenario& scenario, double h_a, double r_i);

/// The truncated-Gaussian correction term k(a, d), with a = (mu - h_g)/(sqrt2 sigma)
/// and d = (h_a - h_g)/(sqrt2 sigma). The hop rate is c (1 + k) with c = lambda0 / (2 Phi(mu/sigma)).
double tgauss_k(double a, double d);
/// Falls back to quadrature (NumericFallback) when 1 + k would lose more than about
/// four digits to cancellation, which happens when most of the mass lies below h_g.
LosClosedForm tgauss_rate(const Scenario& scenario, double h_a);
HopLos los_prob_single_tgauss(const Scenario& scenario, double h_a, double r_i);

/// Dispatches on the scenario's height law.
LosClosedForm hop_rate(const Scenario& scenario, double h_a);
HopLos los_prob_single(const Scenario& scenario, double h_a, double r_i);

/// Product of the two independent hop probabilities.
double los_prob_two_hop(const Scenario& scenario, const AirPosition& air);

} // namespace skyrelay
