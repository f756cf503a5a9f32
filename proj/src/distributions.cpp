// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace skyrelay {

namespace {

// Cody's three-interval rational approximation. `complement` selects erfc
// instead of erf; the |t| <= 0.46875 branch is evaluated directly, the other
// two branches compute erfc(|t|) with exp(-t^2) split to keep the last bits.
double cody_erf(double t, bool complement)
{
  static constexpr double a[5] = {3.1611237438705656,  113.864154151050156, 377.485237685302021,
                                  3209.37758913846947, .185777706184603153};
  static constexpr double b[4] = {23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                  2844.23683343917062};
  static constexpr double c[9] = {.564188496988670089, 8.88314979438837594, 66.1191906371416295,
                                  298.635138197400131, 881.95222124176909,  1712.04761263407058,
                                  2051.07837782607147, 1230.33935479799725, 2.15311535474403846e-8};
  static constexpr double d[8] = {15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                  1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                  3439.36767414372164, 1230.33935480374942};
  static constexpr double p[6] = {.305326634961232344,   .360344899949804439,   .125781726111229246,
                                  .0160837851487422766,  6.58749161529837803e-4, .0163153871373020978};
  static constexpr double q[5] = {2.56852019228982242, 1.87295284992346047, .527905102951428412,
                                  .0605183413124413191, .00233520497626869185};
  static constexpr double inv_sqrt_pi = 0.56418958354775628695;
  static constexpr double x_small = 1.11e-16;
  static constexpr double x_big = 26.543;

  const double y = std::fabs(t);

  if (y <= 0.46875) {
    const double ysq = y > x_small ? y * y : 0.0;
    double num = a[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
      num = (num + a[i]) * ysq;
      den = (den + b[i]) * ysq;
    }
    const double r = t * (num + a[3]) / (den + b[3]);
    return complement ? 1.0 - r : r;
  }

  // exp(-y^2) = exp(-ysq^2) * exp(-(y - ysq)(y + ysq)) with ysq = y truncated to 1/16.
  const auto gauss_tail = [](double v) {
    const double trunc = std::trunc(v * 16.0) / 16.0;
    const double del = (v - trunc) * (v + trunc);
    return std::exp(-trunc * trunc) * std::exp(-del);
  };

  double erfc_abs = 0.0;
  if (y <= 4.0) {
    double num = c[8] * y;
    double den = y;
    for (int i = 0; i < 7; ++i) {
      num = (num + c[i]) * y;
      den = (den + d[i]) * y;
    }
    erfc_abs = gauss_tail(y) * (num + c[7]) / (den + d[7]);
  } else if (y < x_big) {
    const double ysq = 1.0 / (y * y);
    double num = p[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
      num = (num + p[i]) * ysq;
      den = (den + q[i]) * ysq;
    }
    double r = ysq * (num + p[4]) / (den + q[4]);
    r = (inv_sqrt_pi - r) / y;
    erfc_abs = gauss_tail(y) * r;
  }

  if (complement)
    return t < 0.0 ? 2.0 - erfc_abs : erfc_abs;
  const double e = (0.5 - erfc_abs) + 0.5;
  return t < 0.0 ? -e : e;
}

} // namespace

double erf(double t)
{
  return cody_erf(t, false);
}

double erfc(double t)
{
  return cody_erf(t, true);
}

double std_normal_cdf(double t)
{
  return 0.5 * erfc(-t / std::numbers::sqrt2);
}

double std_normal_sf(double t)
{
  return 0.5 * erfc(t / std::numbers::sqrt2);
}

double cdf(const HeightDistribution& dist, double h)
{
  if (h < 0.0)
    return 0.0;
  if (const auto* u = std::get_if<UniformHeights>(&dist))
    return std::min(h / u->h_max, 1.0);

  const auto& tg = std::get<TruncatedGaussianHeights>(dist);
  const double z = (h - tg.mu) / tg.sigma;
  const double mass = std_normal_cdf(tg.mu / tg.sigma);
  // Upper half: 1 - Q(z)/mass loses nothing; lower half: difference of small Phi values is exact enough.
  if (z > 0.0)
    return 1.0 - std_normal_sf(z) / mass;
  return (std_normal_cdf(z) - std_normal_cdf(-tg.mu / tg.sigma)) / mass;
}

double survival(const HeightDistribution& dist, double h)
{
  if (h < 0.0)
    return 1.0;
  if (const auto* u = std::get_if<UniformHeights>(&dist))
    return h >= u->h_max ? 0.0 : 1.0 - h / u->h_max;

  const auto& tg = std::get<TruncatedGaussianHeights>(dist);
  return std_normal_sf((h - tg.mu) / tg.sigma) / std_normal_cdf(tg.mu / tg.sigma);
}

double height_from_survival(const HeightDistribution& dist, double u)
{
  if (const auto* uni = std::get_if<UniformHeights>(&dist))
    return uni->h_max * (1.0 - u);

  // Q(z) = u * Phi(mu/sigma)  =>  z = sqrt(2) * erfc^-1(2 u Phi(mu/sigma)).
  const auto& tg = std::get<TruncatedGaussianHeights>(dist);
  const double target = 2.0 * u * std_normal_cdf(tg.mu / tg.sigma);
  const double z = std::numbers::sqrt2 * boost::math::erfc_inv(std::clamp(target, 0x1p-1022, 2.0));
  return std::max(0.0, tg.mu + tg.sigma * z);
}

std::vector<std::string> distribution_problems(const HeightDistribution& dist)
{
  std::vector<std::string> out;
  if (const auto* u = std::get_if<UniformHeights>(&dist)) {
    if (!(u->h_max > 0.0) || !std::isfinite(u->h_max))
      out.emplace_back("uniform heights require h_max > 0");
  } else {
    const auto& tg = std::get<TruncatedGaussianHeights>(dist);
    if (!(tg.sigma > 0.0) || !std::isfinite(tg.sigma))
      out.emplace_back("truncated_gaussian heights require sigma > 0");
    if (!std::isfinite(tg.mu))
      out.emplace_back("truncated_gaussian heights require a finite mu");
    else if (tg.sigma > 0.0 && !(std_normal_cdf(tg.mu / tg.sigma) >= std::numeric_limits<double>::min()))
      out.emplace_back("truncated_gaussian heights need mu/sigma > -37 (almost no mass above zero)");
  }
  return out;
}

std::string distribution_name(const HeightDistribution& dist)
{
  return std::holds_alternative<UniformHeights>(dist) ? "uniform" : "truncated_gaussian";
}

} // namespace skyrelay
