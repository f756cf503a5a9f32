// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <variant>
#include <vector>

namespace skyrelay {

// Special functions. Rational Chebyshev approximations after W. J. Cody,
// "Rational Chebyshev approximations for the error function" (Math. Comp. 1969);
// absolute error well below 1e-15 on the real line.
double erf(double t);
double erfc(double t);

/// Standard normal CDF, Phi(t), evaluated through erfc so both tails keep full relative precision.
double std_normal_cdf(double t);
/// Standard normal survival function, Q(t) = 1 - Phi(t).
double std_normal_sf(double t);

struct UniformHeights
{
  double h_max; ///< support is [0, h_max]
};

/// Gaussian(mu, sigma) conditioned on h >= 0.
struct TruncatedGaussianHeights
{
  double mu;
  double sigma;
};

/// Obstacle-height law. Adding a variant here is the single extension point for new laws.
using HeightDistribution = std::variant<UniformHeights, TruncatedGaussianHeights>;

double cdf(const HeightDistribution& dist, double h);

/// P(H > h). For the truncated Gaussian this is Q((h - mu)/sigma) / Phi(mu/sigma),
/// which avoids the cancellation of 1 - cdf in the upper tail.
double survival(const HeightDistribution& dist, double h);

/// Inverse of the survival function: the height h with survival(h) = u, for u in (0, 1].
double height_from_survival(const HeightDistribution& dist, double u);

/// Draws one height by inversion (one uniform variate per draw, so streams stay aligned).
template <class URBG>
double sample(const HeightDistribution& dist, URBG& rng)
{
  // generate_canonical is in [0, 1); flip to (0, 1] so u = 0 never reaches the inverse.
  const double u = 1.0 - std::generate_canonical<double, 53>(rng);
  return height_from_survival(dist, u);
}

/// Human-readable list of violated invariants; empty when the law is well formed.
std::vector<std::string> distribution_problems(const HeightDistribution& dist);

std::string distribution_name(const HeightDistribution& dist);

} // namespace skyrelay
