// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skyrelay {

HorizontalDistances horizontal_distances(const Scenario& scenario, const AirPosition& air)
{
  return {std::hypot(air.x, air.y), std::hypot(scenario.g - air.x, air.y)};
}

bool ValidationReport::has_errors() const
{
  return std::any_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == ValidationIssue::Severity::Error;
  });
}

std::string ValidationReport::to_string() const
{
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.severity == ValidationIssue::Severity::Error ? "error: " : "warning: ") << i.field << ": "
       << i.message << '\n';
  }
  return os.str();
}

namespace {

void require(ValidationReport& report, bool ok, std::string field, std::string message)
{
  if (!ok)
    report.issues.push_back({ValidationIssue::Severity::Error, std::move(field), std::move(message)});
}

void add_distribution_issues(ValidationReport& report, const HeightDistribution& dist, const std::string& field)
{
  for (auto& msg : distribution_problems(dist))
    report.issues.push_back({ValidationIssue::Severity::Error, field, std::move(msg)});
}

} // namespace

ValidationReport validate(const Scenario& scenario)
{
  ValidationReport report;
  require(report, scenario.g > 0.0 && std::isfinite(scenario.g), "g", "ground-asset separation requires g > 0");
  require(report, scenario.h_g >= 0.0 && std::isfinite(scenario.h_g), "h_g", "device height requires h_g >= 0");
  require(report, scenario.lambda0 >= 0.0 && std::isfinite(scenario.lambda0), "lambda0",
          "obstacle line density requires lambda0 >= 0");
  add_distribution_issues(report, scenario.heights, "heights");

  // No obstacle can exceed the device height: every sight line is clear. Usable, but almost surely a typo.
  if (const auto* u = std::get_if<UniformHeights>(&scenario.heights); u && u->h_max > 0.0 && u->h_max <= scenario.h_g) {
    report.issues.push_back({ValidationIssue::Severity::Warning, "heights",
                             "h_max <= h_g: no obstacle can block, every hop is line of sight"});
  }
  return report;
}

ValidationReport validate(const RadioConfig& radio)
{
  ValidationReport report;
  require(report, radio.bandwidth_hz > 0.0 && std::isfinite(radio.bandwidth_hz), "bandwidth_hz",
          "bandwidth requires bandwidth_hz > 0");
  require(report, std::isfinite(radio.snr0_db), "snr0_db", "reference SNR must be finite");
  require(report, radio.alpha > 0.0 && std::isfinite(radio.alpha), "alpha", "path-loss exponent requires alpha > 0");
  require(report, radio.d0 > 0.0 && std::isfinite(radio.d0), "d0", "reference distance requires d0 > 0");
  return report;
}

ValidationReport validate(const ForestModel2D& forest)
{
  ValidationReport report;
  require(report, forest.lambda_f >= 0.0 && std::isfinite(forest.lambda_f), "lambda_f",
          "planar obstacle density requires lambda_f >= 0");
  require(report, forest.mean_width > 0.0 && std::isfinite(forest.mean_width), "mean_width",
          "obstacle width requires mean_width > 0");
  add_distribution_issues(report, forest.heights, "heights");
  return report;
}

} // namespace skyrelay
