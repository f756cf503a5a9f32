// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/link.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skyrelay/errors.hpp"

namespace skyrelay {

namespace {

void require_positive_altitude(double h_a)
{
  if (!(h_a > 0.0))
    throw DomainError("relay altitude must be positive");
}

} // namespace

double snr_db(const RadioConfig& radio, double d)
{
  if (!(d > 0.0))
    throw DomainError("link distance must be positive");
  return radio.snr0_db - 10.0 * radio.alpha * std::log10(d / radio.d0);
}

double capacity_single(const RadioConfig& radio, double d)
{
  const double snr = std::pow(10.0, snr_db(radio, d) / 10.0);
  return radio.bandwidth_hz * std::log1p(snr) / std::numbers::ln2;
}

double capacity_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air)
{
  require_positive_altitude(air.h_a);
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  return 0.5 * std::min(capacity_single(radio, slant_distance(r_a, air.h_a)),
                        capacity_single(radio, slant_distance(r_b, air.h_a)));
}

double throughput_single(const Scenario& scenario, const RadioConfig& radio, double h_a, double r_i)
{
  const double p = los_prob_single(scenario, h_a, r_i).probability;
  return p * capacity_single(radio, slant_distance(r_i, h_a));
}

double throughput_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air)
{
  return throughput_two_hop(scenario, radio, air, hop_rate(scenario, air.h_a));
}

double throughput_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air,
                          const LosClosedForm& rate)
{
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  const double p = rate.probability(r_a) * rate.probability(r_b);
  const double c = 0.5 * std::min(capacity_single(radio, slant_distance(r_a, air.h_a)),
                                  capacity_single(radio, slant_distance(r_b, air.h_a)));
  return p * c;
}

LinkMetrics link_metrics(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air)
{
  require_positive_altitude(air.h_a);
  LinkMetrics m{};
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  m.d_a = slant_distance(r_a, air.h_a);
  m.d_b = slant_distance(r_b, air.h_a);
  m.c_a = capacity_single(radio, m.d_a);
  m.c_b = capacity_single(radio, m.d_b);
  m.c_two_hop = 0.5 * std::min(m.c_a, m.c_b);
  m.t_two_hop = los_prob_two_hop(scenario, air) * m.c_two_hop;
  return m;
}

} // namespace skyrelay
