// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/manifolds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "skyrelay/errors.hpp"

namespace skyrelay {

std::string to_string(SumStatus status)
{
  switch (status) {
  case SumStatus::Finite:
    return "finite";
  case SumStatus::Infeasible:
    return "infeasible";
  case SumStatus::Unconstrained:
    return "unconstrained";
  }
  return "unknown";
}

namespace {

void require_probability(double p)
{
  if (!(p > 0.0) || p > 1.0)
    throw DomainError("target LoS probability must lie in (0, 1]");
}

} // namespace

DistanceSum c_sum(const Scenario& scenario, double p, double h_a)
{
  require_probability(p);
  const LosClosedForm rate = hop_rate(scenario, h_a);
  if (rate.kappa <= 0.0)
    return {SumStatus::Unconstrained, std::numeric_limits<double>::infinity(), rate};
  if (p == 1.0)
    return {SumStatus::Infeasible, 0.0, rate};
  return {SumStatus::Finite, -std::log(p) / rate.kappa, rate};
}

double Ellipse::eccentricity() const
{
  return std::sqrt(1.0 - (semi_minor * semi_minor) / (semi_major * semi_major));
}

std::vector<Point2> Ellipse::sample(int n) const
{
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    pts.push_back({center_x + semi_major * std::cos(t), center_y + semi_minor * std::sin(t)});
  }
  return pts;
}

EllipseResult ellipse_constant_los(const Scenario& scenario, double p, double h_a)
{
  const DistanceSum sum = c_sum(scenario, p, h_a);
  if (sum.status != SumStatus::Finite)
    return {sum.status, sum.c, std::nullopt};
  const double g = scenario.g;
  if (!(sum.c > g))
    return {SumStatus::Infeasible, sum.c, std::nullopt};
  // (c^2 - g^2) = (c - g)(c + g) keeps precision near the cone apex.
  const double minor = 0.5 * std::sqrt((sum.c - g) * (sum.c + g));
  return {SumStatus::Finite, sum.c, Ellipse{0.5 * g, 0.0, 0.5 * sum.c, minor}};
}

MinAltitude min_altitude_for_los(const Scenario& scenario, double p, const MinAltitudeOptions& options)
{
  require_probability(p);
  const double h_g = scenario.h_g;
  // Rate just above the devices: every obstacle taller than h_g blocks along the whole hop.
  const double kappa_floor = scenario.lambda0 * survival(scenario.heights, h_g);
  if (kappa_floor <= 0.0)
    return {SumStatus::Unconstrained, h_g, RateMethod::ClosedForm};
  if (p == 1.0)
    return {SumStatus::Infeasible, std::numeric_limits<double>::infinity(), RateMethod::ClosedForm};

  const double neg_log_p = -std::log(p);
  if (neg_log_p / kappa_floor >= scenario.g)
    return {SumStatus::Finite, h_g, RateMethod::ClosedForm};

  if (const auto* u = std::get_if<UniformHeights>(&scenario.heights)) {
    const double span = u->h_max - h_g;
    const double candidate = h_g + scenario.g * scenario.lambda0 * span * span / (2.0 * u->h_max * neg_log_p);
    if (candidate > u->h_max) {
      if (candidate > options.upper)
        return {SumStatus::Infeasible, std::numeric_limits<double>::infinity(), RateMethod::ClosedForm};
      return {SumStatus::Finite, candidate, RateMethod::ClosedForm};
    }
  }

  // c_sum(h_a) is increasing in h_a, so bisect on c_sum(h_a) - g.
  const auto excess = [&](double h) { return neg_log_p / hop_rate(scenario, h).kappa - scenario.g; };
  double lo = h_g;
  double hi = options.upper;
  if (excess(hi) < 0.0)
    return {SumStatus::Infeasible, std::numeric_limits<double>::infinity(), hop_rate(scenario, hi).validity};
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return {SumStatus::Finite, hi, hop_rate(scenario, hi).validity};
}

SphereRadius sphere_radius_for_capacity(const RadioConfig& radio, double c_hop)
{
  if (!(c_hop > 0.0))
    throw DomainError("capacity target must be positive");
  const double snr0 = std::pow(10.0, radio.snr0_db / 10.0);
  const double needed = std::expm1(c_hop / radio.bandwidth_hz * std::numbers::ln2);
  const double radius = radio.d0 * std::pow(snr0 / needed, 1.0 / radio.alpha);
  return {radius, radius < radio.d0};
}

} // namespace skyrelay
