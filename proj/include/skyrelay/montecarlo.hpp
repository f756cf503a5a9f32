// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

#include <nlohmann/json.hpp>

#include "skyrelay/scenario.hpp"

namespace skyrelay {

struct TrialConfig
{
  std::uint64_t n_trials = 100000;
  std::uint64_t seed = 0;
  int threads = 0; ///< 0 = all cores; results do not depend on it
};

struct EmpiricalEstimate
{
  double mean;
  double std_error;
  double ci_low;  ///< mean - 1.96 std_error
  double ci_high; ///< mean + 1.96 std_error
  std::uint64_t n_trials;
  std::uint64_t seed;
};

/// SplitMix64 stream. Every trial gets its own stream seeded from (seed, trial
/// index), which makes estimates independent of how trials are scheduled.
class TrialRng
{
public:
  using result_type = std::uint64_t;

  TrialRng(std::uint64_t seed, std::uint64_t trial) : state_(mix(seed ^ mix(trial + 0x632BE59BD9B4E019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()()
  {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

private:
  static constexpr std::uint64_t mix(std::uint64_t z)
  {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

/// Line-of-sight fraction over sampled 1-D forests along one hop.
EmpiricalEstimate simulate_single_hop(const Scenario& scenario, double h_a, double r_i, const TrialConfig& trials);

/// Both hops sampled independently per trial; success iff both are clear.
EmpiricalEstimate simulate_two_hop(const Scenario& scenario, const AirPosition& air, const TrialConfig& trials);

/// Planar Poisson forest of disks (diameter = mean_width) over the bounding box
/// of both hops grown by `margin`; both hops share each realization. An obstacle
/// blocks a hop when the foot of its centre on the hop line lies inside the hop,
/// the disk overlaps the line, and its height exceeds the critical height at
/// the foot. Requires margin >= 3 * mean_width.
EmpiricalEstimate simulate_forest_2d(const ForestModel2D& forest, const Scenario& scenario, const AirPosition& air,
                                     double margin, const TrialConfig& trials);

/// Mean two-hop capacity when blocked links carry nothing.
EmpiricalEstimate empirical_throughput(const Scenario& scenario, const RadioConfig& radio, const AirPosition& air,
                                       const TrialConfig& trials);

nlohmann::json to_json(const EmpiricalEstimate& est);

} // namespace skyrelay
