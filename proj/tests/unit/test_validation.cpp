// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/validation.hpp"

using namespace skyrelay;

namespace {

// The truncated-Gaussian rate with the sign of the a * erf(a) term flipped: a plausible transcription slip.
LosClosedForm corrupted_rate(const Scenario& s, double h_a)
{
  const auto& tg = std::get<TruncatedGaussianHeights>(s.heights);
  const double a = (tg.mu - s.h_g) / (std::numbers::sqrt2 * tg.sigma);
  const double d = (h_a - s.h_g) / (std::numbers::sqrt2 * tg.sigma);
  const double sp = std::sqrt(std::numbers::pi);
  const double k = (std::exp(-a * a) + sp * ((d - a) * std::erf(a - d) - a * std::erf(a)) - std::exp(-(a - d) * (a - d))) /
                   (sp * d);
  const double c = s.lambda0 / (2.0 * std_normal_cdf(tg.mu / tg.sigma));
  return {c * (1.0 + k), RateMethod::ClosedForm};
}

} // namespace

TEST_CASE("agreement matrices pass for both height laws")
{
  for (const Scenario& s : {fixtures::uniform(), fixtures::tgauss()}) {
    const AgreementReport r = run_agreement(s);
    CHECK(r.quadrature.size() == 400);
    CHECK(r.monte_carlo.size() == 9);
    CHECK(r.all_pass());
    CHECK(r.worst_relative_error() <= r.tolerance);
    for (const auto& c : r.monte_carlo)
      CHECK(c.estimate.n_trials == 100000);
  }
  const AgreementReport u = run_agreement(fixtures::uniform());
  CHECK(u.tolerance == 1e-9);
  for (const auto& c : u.quadrature)
    CHECK(c.h_a > 29.0);
  CHECK(run_agreement(fixtures::tgauss()).tolerance == 1e-6);
}

TEST_CASE("empty forest passes trivially")
{
  const AgreementReport r = run_agreement(fixtures::empty_forest());
  CHECK(r.all_pass());
  CHECK(r.worst_relative_error() == 0.0);
  for (const auto& c : r.monte_carlo)
    CHECK(c.estimate.mean == 1.0);
}

TEST_CASE("a corrupted k formula is caught")
{
  AgreementOptions opts;
  opts.rate = corrupted_rate;
  const AgreementReport r = run_agreement(fixtures::tgauss(), opts);
  CHECK_FALSE(r.all_pass());
  int bad_quad = 0, bad_mc = 0;
  for (const auto& c : r.quadrature)
    bad_quad += c.pass ? 0 : 1;
  for (const auto& c : r.monte_carlo)
    bad_mc += c.pass ? 0 : 1;
  CHECK(bad_quad > 300);
  CHECK(bad_mc > 0);
  CHECK(r.worst_relative_error() > 1e-3);
}

TEST_CASE("report json and options")
{
  AgreementOptions opts;
  opts.grid = 3;
  opts.trials = 1000;
  const auto j = to_json(run_agreement(fixtures::uniform(), opts));
  CHECK(j["distribution"] == "uniform");
  CHECK(j["quadrature"].size() == 9);
  CHECK(j["monte_carlo"].size() == 9);
  CHECK(j["all_pass"].is_boolean());
  opts.grid = 1;
  CHECK_THROWS_AS(run_agreement(fixtures::uniform(), opts), DomainError);
}
