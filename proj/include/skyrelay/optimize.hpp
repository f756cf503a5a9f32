// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "skyrelay/manifolds.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

struct Bracket
{
  double low;
  double high;
};

/// [h_g + 0.1 m, 500 m].
Bracket default_bracket(const Scenario& scenario);

struct OptimizeOptions
{
  int scan_points = 200;   ///< log-spaced coarse scan over the bracket
  double tolerance = 1e-3; ///< golden-section stopping width, meters
};

enum class OptimumStatus { Ok, Degenerate };

struct AltitudeOptimum
{
  double x;
  double y;
  double h_star;
  double t_star; ///< bps
  Bracket bracket;
  OptimumStatus status;
  double refine_width; ///< width of the golden-section interval at termination
};

/// Throughput-maximizing altitude above ground point (x, y). The scan guards
/// against multiple local maxima; the best scan cell is then refined by golden
/// section. Plateaus resolve to the lowest altitude.
AltitudeOptimum optimal_altitude(const Scenario& scenario, const RadioConfig& radio, double x, double y,
                                 const Bracket& bracket, const OptimizeOptions& options = {});

struct ThroughputSurface
{
  GridField h_star; ///< Quantity::Altitude
  GridField t_star; ///< Quantity::Throughput
};

/// optimal_altitude at every (x, y) of a planar lattice; the lattice altitude is ignored.
ThroughputSurface max_throughput_surface(const Scenario& scenario, const RadioConfig& radio, const Axis& x,
                                         const Axis& y, const Bracket& bracket, const OptimizeOptions& options = {},
                                         int threads = 0);

nlohmann::json to_json(const AltitudeOptimum& opt);

/// Header `x,y,h_star,t_star`.
void write_csv(std::ostream& os, const ThroughputSurface& surface);

} // namespace skyrelay
