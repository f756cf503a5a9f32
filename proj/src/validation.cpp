// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/validation.hpp"

#include <algorithm>
#include <cmath>

#include "skyrelay/errors.hpp"

namespace skyrelay {

namespace {

double linspace(double lo, double hi, int n, int i)
{
  return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}

} // namespace

bool AgreementReport::all_pass() const
{
  return std::all_of(quadrature.begin(), quadrature.end(), [](const auto& c) { return c.pass; }) &&
         std::all_of(monte_carlo.begin(), monte_carlo.end(), [](const auto& c) { return c.pass; });
}

double AgreementReport::worst_relative_error() const
{
  double worst = 0.0;
  for (const auto& c : quadrature)
    worst = std::max(worst, c.relative_error);
  return worst;
}

AgreementReport run_agreement(const Scenario& scenario, const AgreementOptions& options)
{
  if (options.grid < 2)
    throw DomainError("agreement grid needs at least 2 points per axis");
  const RateFunction rate = options.rate ? options.rate : RateFunction(hop_rate);
  const bool uniform = std::holds_alternative<UniformHeights>(scenario.heights);

  AgreementReport report;
  report.distribution = distribution_name(scenario.heights);
  report.tolerance = uniform ? options.uniform_tolerance : options.tgauss_tolerance;

  double h_lo = scenario.h_g + 1.0;
  if (const auto* u = std::get_if<UniformHeights>(&scenario.heights))
    h_lo = std::max(u->h_max, scenario.h_g) + 1.0;
  const double h_hi = std::max(500.0, h_lo + 100.0);

  for (int i = 0; i < options.grid; ++i) {
    const double h_a = linspace(h_lo, h_hi, options.grid, i);
    const LosClosedForm closed = rate(scenario, h_a);
    for (int j = 0; j < options.grid; ++j) {
      const double r_i = linspace(1.0, 300.0, options.grid, j);
      const double p_closed = closed.probability(r_i);
      const double p_numeric = los_prob_single_numeric(scenario, h_a, r_i);
      const double rel = std::fabs(p_closed / p_numeric - 1.0);
      report.quadrature.push_back({h_a, r_i, p_closed, p_numeric, rel, rel <= report.tolerance});
    }
  }

  const double mc_altitudes[3] = {scenario.h_g + 20.0, 100.0, 250.0};
  const double mc_distances[3] = {10.0, 40.0, 120.0};
  std::uint64_t cell = 0;
  for (double h_a : mc_altitudes) {
    if (!(h_a > scenario.h_g))
      continue;
    const LosClosedForm closed = rate(scenario, h_a);
    for (double r_i : mc_distances) {
      const TrialConfig trials{options.trials, options.seed + cell++, options.threads};
      const EmpiricalEstimate est = simulate_single_hop(scenario, h_a, r_i, trials);
      const double analytic = closed.probability(r_i);
      // An all-success or all-failure sample has zero empirical spread; judge it by the analytic one.
      double se = est.std_error;
      if (se == 0.0)
        se = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(options.trials));
      const bool pass = std::fabs(est.mean - analytic) <= options.sigma_bound * se;
      report.monte_carlo.push_back({h_a, r_i, analytic, est, pass});
    }
  }
  return report;
}

nlohmann::json to_json(const AgreementReport& report)
{
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& c : report.quadrature) {
    quad.push_back({{"h_a", c.h_a},
                    {"r_i", c.r_i},
                    {"closed_form", c.closed_form},
                    {"numeric", c.numeric},
                    {"relative_error", c.relative_error},
                    {"pass", c.pass}});
  }
  nlohmann::json mc = nlohmann::json::array();
  for (const auto& c : report.monte_carlo) {
    mc.push_back({{"h_a", c.h_a}, {"r_i", c.r_i}, {"analytic", c.analytic}, {"estimate", to_json(c.estimate)},
                  {"pass", c.pass}});
  }
  return {{"distribution", report.distribution},
          {"tolerance", report.tolerance},
          {"worst_relative_error", report.worst_relative_error()},
          {"all_pass", report.all_pass()},
          {"quadrature", std::move(quad)},
          {"monte_carlo", std::move(mc)}};
}

} // namespace skyrelay
