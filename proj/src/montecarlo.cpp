// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "skyrelay/errors.hpp"
#include "skyrelay/link.hpp"
#include "skyrelay/parallel.hpp"

namespace skyrelay {

namespace {

void require_trials(const TrialConfig& trials)
{
  if (trials.n_trials < 1)
    throw DomainError("Monte Carlo needs at least one trial");
}

void require_relay_above_devices(const Scenario& scenario, double h_a)
{
  if (!(h_a > scenario.h_g))
    throw DomainError("relay altitude must exceed the ground device height");
}

// Successes over all trials; partial counts are integers so the total is
// independent of the partition.
template <class Trial>
std::uint64_t count_successes(const TrialConfig& trials, Trial&& trial)
{
  const std::uint64_t n = trials.n_trials;
  const std::size_t blocks = static_cast<std::size_t>(std::min<std::uint64_t>(n, 256));
  std::vector<std::uint64_t> counts(blocks, 0);
  parallel_for(blocks, trials.threads, [&](std::size_t b) {
    const std::uint64_t begin = n * b / blocks;
    const std::uint64_t end = n * (b + 1) / blocks;
    std::uint64_t k = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      TrialRng rng(trials.seed, t);
      if (trial(rng))
        ++k;
    }
    counts[b] = k;
  });
  std::uint64_t total = 0;
  for (auto c : counts)
    total += c;
  return total;
}

EmpiricalEstimate bernoulli_estimate(std::uint64_t successes, const TrialConfig& trials, double scale = 1.0)
{
  const double n = static_cast<double>(trials.n_trials);
  const double p = static_cast<double>(successes) / n;
  const double se = scale * std::sqrt(p * (1.0 - p) / n);
  const double mean = scale * p;
  return {mean, se, mean - 1.96 * se, mean + 1.96 * se, trials.n_trials, trials.seed};
}

// One realization of the 1-D blockage process along a hop of length r_i.
bool hop_clear(const Scenario& scenario, double h_a, double r_i, TrialRng& rng)
{
  if (r_i <= 0.0 || scenario.lambda0 <= 0.0)
    return true;
  std::poisson_distribution<long long> count(scenario.lambda0 * r_i);
  const long long n = count(rng);
  bool clear = true;
  for (long long i = 0; i < n; ++i) {
    const double r = r_i * std::generate_canonical<double, 53>(rng);
    const double h = sample(scenario.heights, rng);
    const double h_c = scenario.h_g + (h_a - scenario.h_g) * (r / r_i);
    if (h > h_c)
      clear = false;
  }
  return clear;
}

} // namespace

EmpiricalEstimate simulate_single_hop(const Scenario& scenario, double h_a, double r_i, const TrialConfig& trials)
{
  require_trials(trials);
  require_relay_above_devices(scenario, h_a);
  if (r_i < 0.0)
    throw DomainError("horizontal hop distance must be non-negative");
  const auto k = count_successes(trials, [&](TrialRng& rng) { return hop_clear(scenario, h_a, r_i, rng); });
  return bernoulli_estimate(k, trials);
}

EmpiricalEstimate simulate_two_hop(const Scenario& scenario, const AirPosition& air, const TrialConfig& trials)
{
  require_trials(trials);
  require_relay_above_devices(scenario, air.h_a);
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  const auto k = count_successes(trials, [&](TrialRng& rng) {
    // Evaluate both hops unconditionally so each trial consumes a fixed pattern of draws.
    const bool a = hop_clear(scenario, air.h_a, r_a, rng);
    const bool b = hop_clear(scenario, air.h_a, r_b, rng);
    return a && b;
  });
  return bernoulli_estimate(k, trials);
}

EmpiricalEstimate simulate_forest_2d(const ForestModel2D& forest, const Scenario& scenario, const AirPosition& air,
                                     double margin, const TrialConfig& trials)
{
  require_trials(trials);
  require_relay_above_devices(scenario, air.h_a);
  if (!(margin >= 3.0 * forest.mean_width))
    throw DomainError("forest region margin must be at least three mean obstacle widths");

  const double x0 = std::min(0.0, air.x) - margin;
  const double x1 = std::max(scenario.g, air.x) + margin;
  const double y0 = std::min(0.0, air.y) - margin;
  const double y1 = std::max(0.0, air.y) + margin;
  const double area = (x1 - x0) * (y1 - y0);
  const double radius = 0.5 * forest.mean_width;

  struct Hop
  {
    double gx, gy; // ground end
    double ux, uy; // unit direction towards the relay projection
    double length;
  };
  const auto make_hop = [&](double gx, double gy) {
    const double dx = air.x - gx, dy = air.y - gy;
    const double len = std::hypot(dx, dy);
    return len > 0.0 ? Hop{gx, gy, dx / len, dy / len, len} : Hop{gx, gy, 0.0, 0.0, 0.0};
  };
  const Hop hops[2] = {make_hop(0.0, 0.0), make_hop(scenario.g, 0.0)};

  const auto k = count_successes(trials, [&](TrialRng& rng) {
    long long n = 0;
    if (forest.lambda_f > 0.0) {
      std::poisson_distribution<long long> count(forest.lambda_f * area);
      n = count(rng);
    }
    bool clear = true;
    for (long long i = 0; i < n; ++i) {
      const double cx = x0 + (x1 - x0) * std::generate_canonical<double, 53>(rng);
      const double cy = y0 + (y1 - y0) * std::generate_canonical<double, 53>(rng);
      const double h = sample(forest.heights, rng);
      for (const Hop& hop : hops) {
        if (hop.length <= 0.0)
          continue;
        const double px = cx - hop.gx, py = cy - hop.gy;
        const double along = px * hop.ux + py * hop.uy;
        if (along < 0.0 || along > hop.length)
          continue;
        if (std::fabs(px * hop.uy - py * hop.ux) > radius)
          continue;
        const double h_c = scenario.h_g + (air.h_a - scenario.h_g) * (along / hop.length);
        if (h > h_c)
          clear = false;
      }
    }
    return clear;
  });
  return bernoulli_estimate(k, trials);
}

EmpiricalEstimate empirical_throughput(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air,
                                       const TrialConfig& trials)
{
  require_trials(trials);
  require_relay_above_devices(scenario, air.h_a);
  const double c_two_hop = capacity_two_hop(scenario, radio, air);
  const auto [r_a, r_b] = horizontal_distances(scenario, air);
  const auto k = count_successes(trials, [&](TrialRng& rng) {
    const bool a = hop_clear(scenario, air.h_a, r_a, rng);
    const bool b = hop_clear(scenario, air.h_a, r_b, rng);
    return a && b;
  });
  return bernoulli_estimate(k, trials, c_two_hop);
}

nlohmann::json to_json(const EmpiricalEstimate& est)
{
  return {{"mean", est.mean},
          {"stderr", est.std_error},
          {"ci95", {est.ci_low, est.ci_high}},
          {"n_trials", est.n_trials},
          {"seed", est.seed}};
}

} // namespace skyrelay
