// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/optimize.hpp"

#include <cmath>
#include <vector>

#include "skyrelay/errors.hpp"
#include "skyrelay/link.hpp"
#include "skyrelay/parallel.hpp"

namespace skyrelay {

Bracket default_bracket(const Scenario& scenario)
{
  return {scenario.h_g + 0.1, 500.0};
}

namespace {

constexpr double kTieRelative = 1e-12;

// True when candidate (h, t) should replace the incumbent: strictly better
// beyond the tie band, or inside the band and lower.
bool better(double t, double h, double best_t, double best_h)
{
  const double band = kTieRelative * std::fabs(best_t);
  if (t > best_t + band)
    return true;
  return t >= best_t - band && h < best_h;
}

} // namespace

AltitudeOptimum optimal_altitude(const Scenario& scenario, const RadioConfig& radio, double x, double y,
                                 const Bracket& bracket, const OptimizeOptions& options)
{
  if (!(bracket.low > scenario.h_g))
    throw DomainError("altitude bracket must start above the ground device height");
  if (!(bracket.high > bracket.low))
    throw DomainError("altitude bracket needs high > low");
  if (options.scan_points < 3)
    throw DomainError("altitude scan needs at least three points");

  const auto throughput = [&](double h) { return throughput_two_hop(scenario, radio, {x, y, h}); };

  const int n = options.scan_points;
  const double ratio = bracket.high / bracket.low;
  std::vector<double> hs(static_cast<std::size_t>(n));
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    hs[k] = k == n - 1 ? bracket.high : bracket.low * std::pow(ratio, static_cast<double>(k) / (n - 1));
    ts[k] = throughput(hs[k]);
  }

  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (better(ts[k], hs[k], ts[best], hs[best]))
      best = k;
  }

  AltitudeOptimum out{x, y, hs[best], ts[best], bracket, OptimumStatus::Ok, 0.0};
  if (ts[best] <= 0.0) {
    out.h_star = bracket.low;
    out.t_star = 0.0;
    out.status = OptimumStatus::Degenerate;
    return out;
  }

  // Golden-section search on the cell pair around the best scan point.
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hs[std::max(best - 1, 0)];
  double b = hs[std::min(best + 1, n - 1)];
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = throughput(c);
  double fd = throughput(d);
  while (b - a > options.tolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = throughput(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = throughput(d);
    }
  }
  out.refine_width = b - a;

  const double mid = 0.5 * (a + b);
  const double t_mid = throughput(mid);
  if (better(t_mid, mid, out.t_star, out.h_star)) {
    out.h_star = mid;
    out.t_star = t_mid;
  }
  return out;
}

ThroughputSurface max_throughput_surface(const Scenario& scenario, const RadioConfig& radio, const Axis& x,
                                         const Axis& y, const Bracket& bracket, const OptimizeOptions& options,
                                         int threads)
{
  const Lattice lattice = Lattice::planar(x, y, bracket.low);
  validate_lattice(lattice);
  ThroughputSurface surface{{lattice, Quantity::Altitude, std::vector<double>(lattice.size())},
                            {lattice, Quantity::Throughput, std::vector<double>(lattice.size())}};
  parallel_for(lattice.size(), threads, [&](std::size_t i) {
    const int ix = static_cast<int>(i % x.count);
    const int iy = static_cast<int>(i / x.count);
    const AltitudeOptimum opt = optimal_altitude(scenario, radio, x.at(ix), y.at(iy), bracket, options);
    surface.h_star.values[i] = opt.h_star;
    surface.t_star.values[i] = opt.t_star;
  });
  return surface;
}

nlohmann::json to_json(const AltitudeOptimum& opt)
{
  return {{"x", opt.x},
          {"y", opt.y},
          {"h_star", opt.h_star},
          {"t_star", opt.t_star},
          {"bracket", {opt.bracket.low, opt.bracket.high}},
          {"status", opt.status == OptimumStatus::Ok ? "ok" : "degenerate"},
          {"refine_width", opt.refine_width}};
}

void write_csv(std::ostream& os, const ThroughputSurface& surface)
{
  const Lattice& lat = surface.h_star.lattice;
  os << "x,y,h_star,t_star\n";
  for (int iy = 0; iy < lat.y.count; ++iy)
    for (int ix = 0; ix < lat.x.count; ++ix)
      os << format_double(lat.x.at(ix)) << ',' << format_double(lat.y.at(iy)) << ','
         << format_double(surface.h_star.at(ix, iy, 0)) << ',' << format_double(surface.t_star.at(ix, iy, 0)) << '\n';
}

} // namespace skyrelay
