// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/manifolds.hpp"

using namespace skyrelay;
using fixtures::rel_err;

TEST_CASE("distance-sum constant")
{
  const Scenario s = fixtures::uniform();
  const DistanceSum d = c_sum(s, 0.857346, 100.0);
  CHECK(d.status == SumStatus::Finite);
  CHECK(d.c == doctest::Approx(60.003121793224745).epsilon(1e-12));
  // Exact inverse of the midpoint two-hop probability.
  CHECK(c_sum(s, los_prob_two_hop(s, {30.0, 0.0, 100.0}), 100.0).c == doctest::Approx(60.0).epsilon(1e-13));

  double prev = std::numeric_limits<double>::infinity();
  for (double p : {0.5, 0.9, 0.99, 0.9999, 1.0 - 1e-12}) {
    const double c = c_sum(s, p, 100.0).c;
    CHECK(c > 0.0);
    CHECK(c < prev);
    prev = c;
  }
  CHECK(prev < 1e-6);

  CHECK(c_sum(s, 1.0, 100.0).status == SumStatus::Infeasible);
  const DistanceSum open = c_sum(fixtures::empty_forest(), 0.9, 100.0);
  CHECK(open.status == SumStatus::Unconstrained);
  CHECK(std::isinf(open.c));
  CHECK_THROWS_AS(c_sum(s, 0.0, 100.0), DomainError);
  CHECK_THROWS_AS(c_sum(s, 1.5, 100.0), DomainError);
}

TEST_CASE("ellipse geometry")
{
  const Scenario s = fixtures::uniform();
  const double kappa = hop_rate(s, 100.0).kappa;

  // c = 2g
  const EllipseResult e = ellipse_constant_los(s, std::exp(-kappa * 2.0 * s.g), 100.0);
  REQUIRE(e.feasible());
  CHECK(e.ellipse->semi_major == doctest::Approx(s.g).epsilon(1e-12));
  CHECK(e.ellipse->semi_minor == doctest::Approx(std::sqrt(3.0) / 2.0 * s.g).epsilon(1e-12));
  CHECK(e.ellipse->center_x == s.g / 2.0);
  CHECK(e.ellipse->center_y == 0.0);

  // c just below g
  const EllipseResult none = ellipse_constant_los(s, std::exp(-kappa * s.g * (1.0 - 1e-9)), 100.0);
  CHECK(none.status == SumStatus::Infeasible);
  CHECK_FALSE(none.feasible());
  CHECK(ellipse_constant_los(fixtures::empty_forest(), 0.9, 100.0).status == SumStatus::Unconstrained);
}

TEST_CASE("ellipse round trip and focus property")
{
  for (const Scenario& s : {fixtures::uniform(), fixtures::tgauss()}) {
    double prev_ecc = -1.0;
    for (double p : {0.5, 0.65, 0.8}) {
      const EllipseResult e = ellipse_constant_los(s, p, 100.0);
      REQUIRE(e.feasible());
      const auto pts = e.ellipse->sample(16);
      REQUIRE(pts.size() == 16);
      for (const Point2& q : pts) {
        CHECK(std::fabs(los_prob_two_hop(s, {q[0], q[1], 100.0}) - p) <= 1e-9);
        CHECK(std::fabs(std::hypot(q[0], q[1]) + std::hypot(q[0] - s.g, q[1]) - e.c) <= 1e-9);
      }
      CHECK(e.ellipse->eccentricity() > prev_ecc);
      prev_ecc = e.ellipse->eccentricity();
    }
  }
  // Four axis endpoints at P = 0.8.
  const Scenario tg = fixtures::tgauss();
  const auto ends = ellipse_constant_los(tg, 0.8, 100.0).ellipse->sample(4);
  for (const Point2& q : ends)
    CHECK(std::fabs(los_prob_two_hop(tg, {q[0], q[1], 100.0}) - 0.8) <= 1e-9);
  CHECK(ends[0][1] == 0.0);
  CHECK(ends[1][0] == doctest::Approx(30.0).epsilon(1e-14));
}

TEST_CASE("minimum altitude")
{
  const Scenario s = fixtures::uniform();
  const MinAltitude m = min_altitude_for_los(s, 0.7);
  CHECK(m.status == SumStatus::Finite);
  CHECK(m.method == RateMethod::ClosedForm);
  CHECK(m.h_min == doctest::Approx(44.287126912061664).epsilon(1e-12));
  CHECK(std::fabs(m.h_min - 44.29) <= 0.01);

  // Truncated Gaussian goes through bisection; oracle root from mpmath.
  const MinAltitude t = min_altitude_for_los(fixtures::tgauss(), 0.7);
  CHECK(t.status == SumStatus::Finite);
  CHECK(std::fabs(t.h_min - 61.519324011377717) <= 2e-6);
  CHECK(std::fabs(c_sum(fixtures::tgauss(), 0.7, t.h_min).c - 60.0) <= 1e-5);

  // Between these targets the apex lies below h_max, where the uniform law has no closed form.
  const MinAltitude low = min_altitude_for_los(s, 0.45);
  CHECK(low.status == SumStatus::Finite);
  CHECK(low.h_min > 2.0);
  CHECK(low.h_min < 29.0);
  CHECK(low.method == RateMethod::NumericFallback);
  CHECK(std::fabs(c_sum(s, 0.45, low.h_min).c - s.g) <= 1e-5);

  // Loose target: the ellipse already exists just above the devices.
  const MinAltitude loose = min_altitude_for_los(s, 0.1);
  CHECK(loose.status == SumStatus::Finite);
  CHECK(loose.h_min == 2.0);

  // Doubling lambda0 doubles h_min - h_g.
  Scenario dense = s;
  dense.lambda0 *= 2.0;
  CHECK(min_altitude_for_los(dense, 0.7).h_min - 2.0 == doctest::Approx(2.0 * (m.h_min - 2.0)).epsilon(1e-12));

  // Vanishing separation.
  const MinAltitude near = min_altitude_for_los(fixtures::uniform(1e-9), 0.7);
  CHECK(near.h_min - 2.0 < 1e-6);

  CHECK(min_altitude_for_los(fixtures::empty_forest(), 0.7).status == SumStatus::Unconstrained);
  CHECK(min_altitude_for_los(fixtures::empty_forest(), 0.7).h_min == 2.0);
  CHECK(min_altitude_for_los(s, 0.99999).status == SumStatus::Infeasible);
  CHECK(min_altitude_for_los(s, 1.0).status == SumStatus::Infeasible);
  CHECK_THROWS_AS(min_altitude_for_los(s, 0.0), DomainError);

  // Higher target, higher apex; the ellipse degenerates to a segment there.
  double prev = 0.0;
  for (double p = 0.3; p < 0.95; p += 0.05) {
    const double h = min_altitude_for_los(fixtures::tgauss(), p).h_min;
    CHECK(h > prev);
    prev = h;
  }
  const EllipseResult apex = ellipse_constant_los(s, 0.7, m.h_min + 1e-9);
  REQUIRE(apex.feasible());
  CHECK(apex.ellipse->semi_minor < 1e-3);
}

TEST_CASE("capacity sphere")
{
  const RadioConfig r = fixtures::radio();
  const SphereRadius two_b = sphere_radius_for_capacity(r, 2.0 * r.bandwidth_hz);
  CHECK(two_b.radius == doctest::Approx(92.569734832413108).epsilon(1e-13));
  CHECK_FALSE(two_b.below_reference_distance);
  for (double c = 1e6; c <= 1e9 * 1.0001; c *= 1.25)
    CHECK(rel_err(capacity_single(r, sphere_radius_for_capacity(r, c).radius), c) <= 1e-9);
  double prev = 0.0;
  for (double c = 1e9; c >= 1e-6; c /= 10.0) {
    const double radius = sphere_radius_for_capacity(r, c).radius;
    CHECK(radius > prev);
    prev = radius;
  }
  CHECK(prev > 1e8);
  CHECK(sphere_radius_for_capacity(r, 1.7e9).below_reference_distance);
  CHECK_THROWS_AS(sphere_radius_for_capacity(r, 0.0), DomainError);
}
