// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/link.hpp"

using namespace skyrelay;

TEST_CASE("path loss")
{
  const RadioConfig r = fixtures::radio();
  CHECK(snr_db(r, 1.0) == 50.0);
  CHECK(snr_db(r, 10.0) == doctest::Approx(27.0).epsilon(1e-15));
  CHECK(snr_db(r, 100.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(snr_db(r, 0.0), DomainError);
}

TEST_CASE("capacity")
{
  const RadioConfig r = fixtures::radio();
  CHECK(capacity_single(r, 1.0) == doctest::Approx(1660965490.1315086).epsilon(1e-15));
  CHECK(capacity_single(r, 1e12) < 1.0);
  double prev = capacity_single(r, 0.01);
  for (double d = 0.02; d < 1e5; d *= 1.3) {
    const double c = capacity_single(r, d);
    CHECK(c < prev);
    prev = c;
  }
}

TEST_CASE("two-hop capacity and throughput, frozen oracle values")
{
  const Scenario s = fixtures::uniform();
  const RadioConfig r = fixtures::radio();
  CHECK(capacity_two_hop(s, r, {30.0, 0.0, 36.3}) == doctest::Approx(196288440.65217837).epsilon(1e-14));
  CHECK(throughput_two_hop(s, r, {30.0, 0.0, 100.0}) == doctest::Approx(73365589.364815725).epsilon(1e-13));
  CHECK(throughput_two_hop(fixtures::tgauss(), r, {30.0, 0.0, 100.0}) ==
        doctest::Approx(68905600.191013419).epsilon(1e-13));

  const LinkMetrics mid = link_metrics(s, r, {30.0, 0.0, 36.3});
  CHECK(mid.d_a == doctest::Approx(47.092356067625243).epsilon(1e-15));
  CHECK(mid.c_a == mid.c_b);
  CHECK(mid.c_two_hop == mid.c_a / 2.0);

  const LinkMetrics above_a = link_metrics(s, r, {0.0, 0.0, 36.3});
  CHECK(above_a.c_two_hop == above_a.c_b / 2.0);
  CHECK(above_a.c_a > above_a.c_b);
}

TEST_CASE("throughput limits")
{
  const RadioConfig r = fixtures::radio();
  const Scenario empty = fixtures::empty_forest();
  CHECK(throughput_single(empty, r, 50.0, 40.0) == capacity_single(r, std::hypot(40.0, 50.0)));
  CHECK(throughput_two_hop(empty, r, {10.0, 5.0, 50.0}) == capacity_two_hop(empty, r, {10.0, 5.0, 50.0}));
  CHECK(throughput_single(fixtures::uniform(), r, 50.0, 0.0) == capacity_single(r, 50.0));
  CHECK_THROWS_AS(throughput_two_hop(fixtures::uniform(), r, {30.0, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(capacity_two_hop(fixtures::uniform(), r, {30.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("ordering, symmetry and the midpoint maximum")
{
  const RadioConfig r = fixtures::radio();
  for (const Scenario& s : {fixtures::uniform(), fixtures::tgauss()}) {
    for (double h_a : {5.0, 36.3, 120.0}) {
      for (double y : {-20.0, 0.0, 7.0}) {
        double prev = 0.0;
        for (double x = -30.0; x <= 90.0; x += 2.5) {
          const AirPosition p{x, y, h_a};
          const LinkMetrics m = link_metrics(s, r, p);
          CHECK(m.t_two_hop <= m.c_two_hop);
          CHECK(m.c_two_hop <= std::min(m.c_a, m.c_b));
          CHECK(m.t_two_hop >= 0.0);
          CHECK(throughput_single(s, r, h_a, std::hypot(x, y)) <= capacity_single(r, m.d_a));

          const AirPosition mirror_y{x, -y, h_a};
          CHECK(throughput_two_hop(s, r, mirror_y) == doctest::Approx(m.t_two_hop).epsilon(1e-14));
          CHECK(capacity_two_hop(s, r, mirror_y) == doctest::Approx(m.c_two_hop).epsilon(1e-14));
          const AirPosition mirror_x{s.g - x, y, h_a};
          CHECK(throughput_two_hop(s, r, mirror_x) == doctest::Approx(m.t_two_hop).epsilon(1e-14));

          if (x >= 0.0 && x <= s.g / 2.0) {
            CHECK(m.c_two_hop >= prev);
            prev = m.c_two_hop;
          }
          CHECK(m.c_two_hop <= capacity_two_hop(s, r, {s.g / 2.0, y, h_a}));
        }
      }
    }
  }
}
