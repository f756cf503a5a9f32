// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "skyrelay/los.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// Per-position link budget. Capacities and throughput in bits per second.
struct LinkMetrics
{
  double d_a; ///< 3-D distance relay to asset a
  double d_b;
  double c_a; ///< Shannon capacity of hop a
  double c_b;
  double c_two_hop; ///< min(c_a, c_b) / 2, halved for time-division duplexing at the relay
  double t_two_hop; ///< two-hop LoS probability times c_two_hop
};

/// Log-distance path loss: SNR0 - 10 alpha log10(d / d0). Throws DomainError for d <= 0.
double snr_db(const RadioConfig& radio, double d);

/// B log2(1 + SNR).
double capacity_single(const RadioConfig& radio, double d);

/// Euclidean distance from the relay to a ground asset at horizontal distance r_i.
inline double slant_distance(double r_i, double h_a)
{
  return std::hypot(r_i, h_a);
}

double capacity_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air);

double throughput_single(const Scenario& scenario, const RadioConfig& radio, double h_a, double r_i);

double throughput_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air);

/// Same as above with the altitude's hop rate already known (grid sweeps reuse it per slice).
double throughput_two_hop(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air,
                          const LosClosedForm& rate);

LinkMetrics link_metrics(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air);

} // namespace skyrelay
