// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/link.hpp"
#include "skyrelay/montecarlo.hpp"
#include "skyrelay/optimize.hpp"

using namespace skyrelay;

namespace {

bool within(const EmpiricalEstimate& e, double target, double sigmas = 3.0)
{
  return std::fabs(e.mean - target) <= sigmas * e.std_error;
}

bool agree(const EmpiricalEstimate& a, const EmpiricalEstimate& b)
{
  return std::fabs(a.mean - b.mean) <= 3.0 * std::hypot(a.std_error, b.std_error);
}

bool identical(const EmpiricalEstimate& a, const EmpiricalEstimate& b)
{
  return a.mean == b.mean && a.std_error == b.std_error && a.ci_low == b.ci_low && a.ci_high == b.ci_high &&
         a.n_trials == b.n_trials && a.seed == b.seed;
}

} // namespace

TEST_CASE("trial streams")
{
  TrialRng a(7, 0), b(7, 1), c(8, 0), a2(7, 0);
  const auto x = a();
  CHECK(x == a2());
  CHECK(x != b());
  CHECK(x != c());
}

TEST_CASE("trivial cases")
{
  const TrialConfig tc{20000, 3, 0};
  const auto empty = simulate_single_hop(fixtures::empty_forest(), 100.0, 30.0, tc);
  CHECK(empty.mean == 1.0);
  CHECK(empty.std_error == 0.0);
  CHECK(simulate_single_hop(fixtures::uniform(), 100.0, 0.0, tc).mean == 1.0);
  CHECK(simulate_two_hop(fixtures::empty_forest(), {30.0, 0.0, 100.0}, tc).mean == 1.0);

  const auto t = empirical_throughput(fixtures::empty_forest(), fixtures::radio(), {30.0, 0.0, 50.0}, tc);
  CHECK(t.mean == capacity_two_hop(fixtures::empty_forest(), fixtures::radio(), {30.0, 0.0, 50.0}));
  CHECK(t.std_error == 0.0);

  ForestModel2D bare{0.0, 1.0, UniformHeights{29.0}};
  CHECK(simulate_forest_2d(bare, fixtures::uniform(), {30.0, 0.0, 100.0}, 5.0, tc).mean == 1.0);

  CHECK_THROWS_AS(simulate_single_hop(fixtures::uniform(), 2.0, 30.0, tc), DomainError);
  CHECK_THROWS_AS(simulate_single_hop(fixtures::uniform(), 100.0, 30.0, {0, 1, 0}), DomainError);
  CHECK_THROWS_AS(simulate_forest_2d(bare, fixtures::uniform(), {30.0, 0.0, 100.0}, 2.0, tc), DomainError);
}

TEST_CASE("agreement with the closed forms")
{
  const TrialConfig tc{100000, 20230717, 0};
  const auto single = simulate_single_hop(fixtures::uniform(), 100.0, 30.0, tc);
  CHECK(within(single, 0.92593351024455134));
  CHECK(single.ci_low == doctest::Approx(single.mean - 1.96 * single.std_error));
  CHECK(single.ci_high == doctest::Approx(single.mean + 1.96 * single.std_error));
  CHECK(single.n_trials == 100000);
  CHECK(single.seed == 20230717);

  CHECK(within(simulate_two_hop(fixtures::uniform(), {30.0, 0.0, 100.0}, tc), 0.85735286539379665));
  CHECK(within(simulate_two_hop(fixtures::tgauss(), {10.0, 25.0, 40.0}, tc),
               los_prob_two_hop(fixtures::tgauss(), {10.0, 25.0, 40.0})));

  const auto t = empirical_throughput(fixtures::uniform(), fixtures::radio(), {30.0, 0.0, 100.0}, tc);
  CHECK(within(t, 73365589.364815725));

  const auto opt = optimal_altitude(fixtures::uniform(), fixtures::radio(), 30.0, 0.0,
                                    default_bracket(fixtures::uniform()));
  CHECK(within(empirical_throughput(fixtures::uniform(), fixtures::radio(), {30.0, 0.0, opt.h_star}, tc), opt.t_star));
}

TEST_CASE("above an asset the two-hop run is the single-hop run")
{
  const TrialConfig tc{50000, 99, 0};
  const auto two = simulate_two_hop(fixtures::uniform(), {0.0, 0.0, 80.0}, tc);
  const auto one = simulate_single_hop(fixtures::uniform(), 80.0, 60.0, tc);
  CHECK(two.mean == one.mean);
}

TEST_CASE("results do not depend on the thread count")
{
  const Scenario s = fixtures::tgauss();
  const AirPosition air{20.0, 10.0, 45.0};
  ForestModel2D f{0.01, 2.0, s.heights};
  for (std::uint64_t n : {1ull, 255ull, 257ull, 30001ull}) {
    const TrialConfig one{n, 42, 1}, four{n, 42, 4};
    CHECK(identical(simulate_single_hop(s, 45.0, 40.0, one), simulate_single_hop(s, 45.0, 40.0, four)));
    CHECK(identical(simulate_two_hop(s, air, one), simulate_two_hop(s, air, four)));
    CHECK(identical(simulate_forest_2d(f, s, air, 6.0, one), simulate_forest_2d(f, s, air, 6.0, four)));
    CHECK(identical(empirical_throughput(s, fixtures::radio(), air, one),
                    empirical_throughput(s, fixtures::radio(), air, four)));
  }
}

TEST_CASE("95% intervals cover the analytic value")
{
  const Scenario s = fixtures::uniform();
  const double p = los_prob_single(s, 100.0, 30.0).probability;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto e = simulate_single_hop(s, 100.0, 30.0, {5000, 1000 + seed, 0});
    if (e.ci_low <= p && p <= e.ci_high)
      ++covered;
  }
  INFO("covered " << covered << " of 200");
  CHECK(covered >= 180);
}

TEST_CASE("planar forest reduces to the line model")
{
  const Scenario s = fixtures::uniform();
  const TrialConfig tc{100000, 5, 0};
  for (const AirPosition& air : {AirPosition{30.0, 0.0, 100.0}, AirPosition{25.0, 15.0, 40.0}}) {
    const ForestModel2D thin{0.02, 1.0, s.heights};
    const auto planar = simulate_forest_2d(thin, s, air, 5.0, tc);
    const auto line = simulate_two_hop(s, air, {100000, 6, 0});
    CHECK(agree(planar, line));
    CHECK(within(planar, los_prob_two_hop(s, air)));

    // Same line density with wider, sparser obstacles.
    const ForestModel2D wide{0.01, 2.0, s.heights};
    CHECK(agree(simulate_forest_2d(wide, s, air, 6.0, {100000, 7, 0}), planar));
  }
}

TEST_CASE("agreement matrix")
{
  for (const Scenario& s : {fixtures::uniform(), fixtures::tgauss()}) {
    std::uint64_t seed = 500;
    for (double h_a : {22.0, 100.0, 250.0}) {
      for (double r_i : {10.0, 40.0, 120.0}) {
        const auto e = simulate_single_hop(s, h_a, r_i, {100000, seed++, 0});
        CHECK(within(e, los_prob_single(s, h_a, r_i).probability));
      }
    }
  }
}

TEST_CASE("json")
{
  const auto j = to_json(EmpiricalEstimate{0.5, 0.01, 0.4804, 0.5196, 100, 9});
  CHECK(j["mean"] == 0.5);
  CHECK(j["stderr"] == 0.01);
  CHECK(j["ci95"][1] == 0.5196);
  CHECK(j["n_trials"] == 100);
  CHECK(j["seed"] == 9);
}
