// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "skyrelay/distributions.hpp"

namespace skyrelay {

/// Two ground assets at (0, 0) and (g, 0) in a forest whose obstacles cross any
/// ground line at `lambda0` per meter. All lengths in meters.
struct Scenario
{
  double g;       ///< ground-asset separation
  double h_g;     ///< device height of both ground assets
  double lambda0; ///< expected potential obstacles per meter along a line
  HeightDistribution heights;
};

/// Relay position: ground projection (x, y) and altitude h_a.
struct AirPosition
{
  double x;
  double y;
  double h_a;
};

struct RadioConfig
{
  double bandwidth_hz;
  double snr0_db; ///< SNR at the reference distance d0
  double alpha;   ///< path-loss exponent
  double d0;      ///< reference distance, meters
};

/// Planar Poisson forest. Its line density is lambda_f * mean_width.
struct ForestModel2D
{
  double lambda_f;   ///< potential obstacles per square meter
  double mean_width; ///< E(W), meters
  HeightDistribution heights;

  [[nodiscard]] double line_density() const { return lambda_f * mean_width; }
};

struct HorizontalDistances
{
  double r_a; ///< to the asset at the origin
  double r_b; ///< to the asset at (g, 0)
};

HorizontalDistances horizontal_distances(const Scenario& scenario, const AirPosition& air);

struct ValidationIssue
{
  enum class Severity { Error, Warning };
  Severity severity;
  std::string field;
  std::string message;
};

struct ValidationReport
{
  std::vector<ValidationIssue> issues;

  [[nodiscard]] bool empty() const { return issues.empty(); }
  [[nodiscard]] bool has_errors() const;
  [[nodiscard]] std::string to_string() const;
};

ValidationReport validate(const Scenario& scenario);
ValidationReport validate(const RadioConfig& radio);
ValidationReport validate(const ForestModel2D& forest);

} // namespace skyrelay
