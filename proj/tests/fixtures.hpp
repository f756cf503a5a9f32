// SPDX-License-Identifier: Apache-2.0
// Shared scenarios for the test suites: the forest used throughout the
// numerical results (lambda0 = 0.02 /m, h_g = 2 m, g = 60 m).
#pragma once

#include <cmath>

#include "skyrelay/scenario.hpp"

namespace fixtures {

inline skyrelay::Scenario uniform(double g = 60.0)
{
  return {g, 2.0, 0.02, skyrelay::UniformHeights{29.0}};
}

inline skyrelay::Scenario tgauss(double g = 60.0)
{
  return {g, 2.0, 0.02, skyrelay::TruncatedGaussianHeights{19.0, 10.0}};
}

inline skyrelay::Scenario empty_forest(double g = 60.0)
{
  return {g, 2.0, 0.0, skyrelay::UniformHeights{29.0}};
}

inline skyrelay::RadioConfig radio()
{
  return {100e6, 50.0, 2.3, 1.0};
}

inline double rel_err(double a, double b)
{
  return std::fabs(a / b - 1.0);
}

} // namespace fixtures
