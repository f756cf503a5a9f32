// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/los.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "skyrelay/errors.hpp"

namespace skyrelay {

namespace {

constexpr double kQuadratureTolerance = 1e-10;
// Requested from the integrator; its summed error estimate can overshoot the
// per-interval target, so ask for more than the acceptance check needs.
constexpr double kQuadratureTarget = 1e-12;
constexpr unsigned kQuadratureDepth = 20;

void require_above_ground_device(const Scenario& scenario, double h_a)
{
  if (!(h_a > scenario.h_g)) {
    std::ostringstream os;
    os << "relay altitude h_a = " << h_a << " must exceed the ground device height h_g = " << scenario.h_g;
    throw DomainError(os.str());
  }
}

template <class F>
double integrate(F&& f, double lo, double hi)
{
  if (!(hi > lo))
    return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, lo, hi, kQuadratureDepth, kQuadratureTarget, &error, &l1);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (!std::isfinite(value) || error > std::max(kQuadratureTolerance * std::fabs(value), floor)) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << lo << ", " << hi << "] did not converge (error estimate " << error
       << ", integral " << value << ")";
    throw QuadratureError(os.str());
  }
  return value;
}

// Point where the survival function has a kink (uniform h_max), if any.
double survival_kink(const HeightDistribution& heights)
{
  if (const auto* u = std::get_if<UniformHeights>(&heights))
    return u->h_max;
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

double LosClosedForm::probability(double r_i) const
{
  return std::exp(-kappa * r_i);
}

double critical_height(const Scenario& scenario, double h_a, double r_i, double r)
{
  require_above_ground_device(scenario, h_a);
  if (!(r_i > 0.0))
    throw DomainError("critical height needs a positive horizontal hop distance r_i");
  if (r < 0.0 || r > r_i)
    throw DomainError("critical height is defined for 0 <= r <= r_i");
  return scenario.h_g + (h_a - scenario.h_g) * (r / r_i);
}

double blockage_density(const Scenario& scenario, double h_a, double r_i, double r)
{
  return scenario.lambda0 * survival(scenario.heights, critical_height(scenario, h_a, r_i, r));
}

double los_prob_single_numeric(const Scenario& scenario, double h_a, double r_i)
{
  require_above_ground_device(scenario, h_a);
  if (r_i < 0.0)
    throw DomainError("horizontal hop distance must be non-negative");
  if (r_i == 0.0 || scenario.lambda0 == 0.0)
    return 1.0;

  const auto density = [&](double r) {
    const double h_c = scenario.h_g + (h_a - scenario.h_g) * (r / r_i);
    return scenario.lambda0 * survival(scenario.heights, h_c);
  };

  // Split at the critical distance where h_c crosses the kink of the survival function.
  double total = 0.0;
  const double kink = survival_kink(scenario.heights);
  if (std::isfinite(kink) && kink > scenario.h_g && kink < h_a) {
    const double r_c = r_i * (kink - scenario.h_g) / (h_a - scenario.h_g);
    total = integrate(density, 0.0, r_c) + integrate(density, r_c, r_i);
  } else {
    total = integrate(density, 0.0, r_i);
  }
  return std::exp(-total);
}

LosClosedForm numeric_rate(const Scenario& scenario, double h_a)
{
  require_above_ground_device(scenario, h_a);
  if (scenario.lambda0 == 0.0)
    return {0.0, RateMethod::NumericFallback};

  const auto surv = [&](double h) { return survival(scenario.heights, h); };
  double mass = 0.0;
  const double kink = survival_kink(scenario.heights);
  if (std::isfinite(kink) && kink > scenario.h_g && kink < h_a)
    mass = integrate(surv, scenario.h_g, kink) + integrate(surv, kink, h_a);
  else
    mass = integrate(surv, scenario.h_g, h_a);
  return {scenario.lambda0 * mass / (h_a - scenario.h_g), RateMethod::NumericFallback};
}

LosClosedForm uniform_rate(const Scenario& scenario, double h_a)
{
  require_above_ground_device(scenario, h_a);
  const auto* u = std::get_if<UniformHeights>(&scenario.heights);
  if (u == nullptr)
    throw DomainError("uniform closed form requested for a non-uniform height law");

  const double h_max = u->h_max;
  const double h_g = scenario.h_g;
  // No obstacle reaches the device height: nothing ever blocks.
  if (h_max <= h_g)
    return {0.0, RateMethod::ClosedForm};
  if (h_a <= h_max)
    return numeric_rate(scenario, h_a);

  const double span = h_max - h_g;
  return {scenario.lambda0 * span * span / (2.0 * h_max * (h_a - h_g)), RateMethod::ClosedForm};
}

HopLos los_prob_single_uniform(const Scenario& scenario, double h_a, double r_i)
{
  if (r_i < 0.0)
    throw DomainError("horizontal hop distance must be non-negative");
  const LosClosedForm rate = uniform_rate(scenario, h_a);
  if (rate.validity == RateMethod::NumericFallback)
    return {los_prob_single_numeric(scenario, h_a, r_i), rate};
  return {rate.probability(r_i), rate};
}

namespace {

// Numerator of 1 + k (times sqrt(pi) d) and the sum of its terms' magnitudes.
struct OnePlusK
{
  double numerator;
  double magnitude;
};

OnePlusK one_plus_k(double a, double d)
{
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double amd = a - d;
  const double terms[] = {sqrt_pi * d, std::exp(-a * a), sqrt_pi * (d - a) * erf(amd), sqrt_pi * a * erf(a),
                          -std::exp(-amd * amd)};
  OnePlusK out{0.0, 0.0};
  for (double t : terms) {
    out.numerator += t;
    out.magnitude += std::fabs(t);
  }
  return out;
}

// Above this cancellation factor the closed form keeps fewer than about 11 digits.
constexpr double kMaxCancellation = 1e4;

} // namespace

double tgauss_k(double a, double d)
{
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  const double amd = a - d;
  return (std::exp(-a * a) + sqrt_pi * ((d - a) * erf(amd) + a * erf(a)) - std::exp(-amd * amd)) / (sqrt_pi * d);
}

LosClosedForm tgauss_rate(const Scenario& scenario, double h_a)
{
  require_above_ground_device(scenario, h_a);
  const auto* tg = std::get_if<TruncatedGaussianHeights>(&scenario.heights);
  if (tg == nullptr)
    throw DomainError("truncated-Gaussian closed form requested for a different height law");

  const double scale = std::numbers::sqrt2 * tg->sigma;
  const double a = (tg->mu - scenario.h_g) / scale;
  const double d = (h_a - scenario.h_g) / scale;
  // When most of the height mass lies below h_g, 1 + k is a tiny difference of O(1) terms.
  const OnePlusK opk = one_plus_k(a, d);
  if (!(opk.magnitude <= kMaxCancellation * std::fabs(opk.numerator)))
    return numeric_rate(scenario, h_a);
  const double c = scenario.lambda0 / (2.0 * std_normal_cdf(tg->mu / tg->sigma));
  return {c * (1.0 + tgauss_k(a, d)), RateMethod::ClosedForm};
}

HopLos los_prob_single_tgauss(const Scenario& scenario, double h_a, double r_i)
{
  if (r_i < 0.0)
    throw DomainError("horizontal hop distance must be non-negative");
  const LosClosedForm rate = tgauss_rate(scenario, h_a);
  return {rate.probability(r_i), rate};
}

LosClosedForm hop_rate(const Scenario& scenario, double h_a)
{
  if (std::holds_alternative<UniformHeights>(scenario.heights))
    return uniform_rate(scenario, h_a);
  return tgauss_rate(scenario, h_a);
}

HopLos los_prob_single(const Scenario& scenario, double h_a, double r_i)
{
  if (std::holds_alternative<UniformHeights>(scenario.heights))
    return los_prob_single_uniform(scenario, h_a, r_i);
  return los_prob_single_tgauss(scenario, h_a, r_i);
}

double los_prob_two_hop(const Scenario& scenario, const AirPosition& air)
{
  const LosClosedForm rate = hop_rate(scenario, air.h_a);
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  return rate.probability(r_a) * rate.probability(r_b);
}

} // namespace skyrelay
