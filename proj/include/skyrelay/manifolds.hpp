// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyrelay/link.hpp"
#include "skyrelay/los.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

// ---------------------------------------------------------------------------
// Constant-LoS geometry
// ---------------------------------------------------------------------------

enum class SumStatus {
  Finite,       ///< a finite constant exists
  Infeasible,   ///< no position reaches the target
  Unconstrained ///< every position reaches the target (empty or harmless forest)
};

std::string to_string(SumStatus status);

/// Constant value of r_a + r_b that yields two-hop LoS probability P at altitude h_a.
struct DistanceSum
{
  SumStatus status;
  double c; ///< meters; 0 when Infeasible, +inf when Unconstrained
  LosClosedForm rate;
};

/// c = -ln(P) / kappa(h_a). P must lie in (0, 1]; P = 1 in a non-empty forest is Infeasible.
DistanceSum c_sum(const Scenario& scenario, double p, double h_a);

using Point2 = std::array<double, 2>;

/// Axis-aligned ellipse centered at (g/2, 0) with foci at both ground assets.
struct Ellipse
{
  double center_x;
  double center_y;
  double semi_major; ///< along x
  double semi_minor; ///< along y

  [[nodiscard]] double eccentricity() const;
  /// n points at equally spaced parameter angles, starting on the positive major axis.
  [[nodiscard]] std::vector<Point2> sample(int n) const;
};

struct EllipseResult
{
  SumStatus status;
  double c;
  std::optional<Ellipse> ellipse;

  [[nodiscard]] bool feasible() const { return ellipse.has_value(); }
};

/// Locus of relay projections at altitude h_a with two-hop LoS probability P.
/// Requires c > g; otherwise Infeasible.
EllipseResult ellipse_constant_los(const Scenario& scenario, double p, double h_a);

struct MinAltitudeOptions
{
  double upper = 1e4;       ///< bisection stops here and reports Infeasible
  double tolerance = 1e-6;  ///< meters
};

struct MinAltitude
{
  SumStatus status;
  double h_min; ///< meters; h_g when Unconstrained
  RateMethod method;
};

/// Lowest altitude at which the constant-LoS ellipse exists (c_sum(h_a) >= g), the apex of the cone.
MinAltitude min_altitude_for_los(const Scenario& scenario, double p, const MinAltitudeOptions& options = {});

struct SphereRadius
{
  double radius;                   ///< meters
  bool below_reference_distance;   ///< radius < d0: outside the path-loss model's range
};

/// Radius of the sphere around a ground asset on which one hop carries c_hop bits per second.
SphereRadius sphere_radius_for_capacity(const RadioConfig& radio, double c_hop);

// ---------------------------------------------------------------------------
// Sampled fields
// ---------------------------------------------------------------------------

struct Axis
{
  double min;
  double max;
  int count;

  [[nodiscard]] double at(int i) const;
  [[nodiscard]] double step() const;
};

/// Regular lattice. x and y need at least two samples; an altitude axis with a
/// single sample is a planar slice.
struct Lattice
{
  Axis x;
  Axis y;
  Axis h_a;

  static Lattice planar(Axis x, Axis y, double altitude) { return {x, y, {altitude, altitude, 1}}; }
  [[nodiscard]] std::size_t size() const;
  /// Row-major with x fastest, then y, then altitude.
  [[nodiscard]] std::size_t index(int ix, int iy, int iz) const;
};

/// Throws DomainError unless counts and ranges are valid.
void validate_lattice(const Lattice& lattice);

enum class Quantity { Los, Capacity, Throughput, Altitude };

std::string to_string(Quantity q);
Quantity quantity_from_string(const std::string& name);

struct GridField
{
  Lattice lattice;
  Quantity quantity;
  std::vector<double> values;

  [[nodiscard]] double at(int ix, int iy, int iz) const { return values[lattice.index(ix, iy, iz)]; }
};

/// Evaluates the quantity at every lattice point. `threads` = 0 uses all cores;
/// values are identical for every thread count.
GridField grid_field(const Scenario& scenario, const RadioConfig& radio, Quantity quantity, const Lattice& lattice,
                     int threads = 0);

struct Polyline
{
  std::vector<Point2> points;
  bool closed; ///< closed rings omit the repeated first vertex
};

struct ContourSlice
{
  double h_a;
  std::vector<Polyline> polylines;
  double enclosed_area;    ///< signed shoelace sum over closed rings (region >= level counts positive)
  int open_polylines;      ///< contours cut by the lattice boundary; their area is not counted
};

struct ContourSet
{
  double level;
  std::vector<ContourSlice> slices;

  [[nodiscard]] bool empty() const { return slices.empty(); }
};

/// Marching-squares iso-lines of every altitude slice. Rings are oriented with
/// the region at or above `level` on their left. A level outside the field's
/// range yields an empty set.
ContourSet iso_contours(const GridField& field, double level);

/// Enclosed area of the region above `level` versus altitude, with the peak
/// located by a parabolic fit through the best altitude sample and its neighbours.
struct AreaTurnover
{
  std::vector<double> altitudes;
  std::vector<double> areas;
  double h_peak;
  double peak_area;
  bool interior_peak; ///< false when the maximum sits on the first or last altitude
};

AreaTurnover cross_section_turnover(const Scenario& scenario, const RadioConfig& radio, Quantity quantity, double level,
                                    const Lattice& lattice, int threads = 0);

// ---------------------------------------------------------------------------
// Exports
// ---------------------------------------------------------------------------

/// %.17g: round-trips every double.
std::string format_double(double v);

/// Header `x,y,h_a,value`, one row per lattice point in lattice order.
void write_csv(std::ostream& os, const GridField& field);

nlohmann::json to_json(const ContourSet& contours);
nlohmann::json to_json(const EllipseResult& ellipse);

} // namespace skyrelay
