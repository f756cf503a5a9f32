// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyrelay/los.hpp"
#include "skyrelay/montecarlo.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// Closed-form hop rate under test; defaults to hop_rate. Tests substitute a
/// deliberately wrong rate to check that the matrices catch it.
using RateFunction = std::function<LosClosedForm(const Scenario&, double h_a)>;

struct AgreementOptions
{
  int grid = 20;                 ///< closed-form vs quadrature grid is grid x grid over (h_a, r_i)
  std::uint64_t trials = 100000; ///< per Monte Carlo cell
  std::uint64_t seed = 20230717;
  int threads = 0;
  double uniform_tolerance = 1e-9; ///< relative, uniform heights
  double tgauss_tolerance = 1e-6;  ///< relative, truncated Gaussian heights
  double sigma_bound = 3.0;        ///< Monte Carlo cells pass within this many standard errors
  RateFunction rate;             ///< empty = hop_rate
};

struct QuadratureCell
{
  double h_a;
  double r_i;
  double closed_form;
  double numeric;
  double relative_error;
  bool pass;
};

struct MonteCarloCell
{
  double h_a;
  double r_i;
  double analytic;
  EmpiricalEstimate estimate;
  bool pass;
};

struct AgreementReport
{
  std::string distribution;
  double tolerance;
  std::vector<QuadratureCell> quadrature;
  std::vector<MonteCarloCell> monte_carlo;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] double worst_relative_error() const;
};

/// Closed form vs adaptive quadrature over a grid of altitudes and hop
/// lengths, plus analytic vs Monte Carlo on a 3 x 3 grid. For uniform heights
/// the quadrature grid stays in the closed-form regime (h_a > h_max).
AgreementReport run_agreement(const Scenario& scenario, const AgreementOptions& options = {});

nlohmann::json to_json(const AgreementReport& report);

} // namespace skyrelay
