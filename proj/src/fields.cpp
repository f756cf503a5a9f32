// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "skyrelay/errors.hpp"
#include "skyrelay/manifolds.hpp"
#include "skyrelay/parallel.hpp"

namespace skyrelay {

double Axis::at(int i) const
{
  if (count <= 1)
    return min;
  if (i == count - 1)
    return max;
  return min + (max - min) * static_cast<double>(i) / (count - 1);
}

double Axis::step() const
{
  return count <= 1 ? 0.0 : (max - min) / (count - 1);
}

std::size_t Lattice::size() const
{
  return static_cast<std::size_t>(x.count) * static_cast<std::size_t>(y.count) * static_cast<std::size_t>(h_a.count);
}

std::size_t Lattice::index(int ix, int iy, int iz) const
{
  return (static_cast<std::size_t>(iz) * y.count + iy) * x.count + ix;
}

void validate_lattice(const Lattice& lattice)
{
  const auto check = [](const Axis& a, const char* name, int min_count) {
    if (a.count < min_count)
      throw DomainError(std::string("lattice axis ") + name + " needs at least " + std::to_string(min_count) +
                        " samples");
    if (!std::isfinite(a.min) || !std::isfinite(a.max))
      throw DomainError(std::string("lattice axis ") + name + " has a non-finite bound");
    if (a.count > 1 && !(a.max > a.min))
      throw DomainError(std::string("lattice axis ") + name + " needs max > min");
  };
  check(lattice.x, "x", 2);
  check(lattice.y, "y", 2);
  check(lattice.h_a, "h_a", 1);
}

std::string to_string(Quantity q)
{
  switch (q) {
  case Quantity::Los:
    return "los";
  case Quantity::Capacity:
    return "capacity";
  case Quantity::Throughput:
    return "throughput";
  case Quantity::Altitude:
    return "altitude";
  }
  return "unknown";
}

Quantity quantity_from_string(const std::string& name)
{
  if (name == "los")
    return Quantity::Los;
  if (name == "capacity")
    return Quantity::Capacity;
  if (name == "throughput")
    return Quantity::Throughput;
  throw DomainError("unknown quantity '" + name + "' (expected los, capacity or throughput)");
}

GridField grid_field(const Scenario& scenario, const RadioConfig& radio, Quantity quantity, const Lattice& lattice,
                     int threads)
{
  validate_lattice(lattice);
  if (quantity == Quantity::Altitude)
    throw DomainError("altitude fields come from the optimizer, not from direct evaluation");

  // One hop rate per altitude slice; the LoS factor only depends on h_a and r_i.
  std::vector<LosClosedForm> rates;
  rates.reserve(static_cast<std::size_t>(lattice.h_a.count));
  for (int iz = 0; iz < lattice.h_a.count; ++iz) {
    const double h = lattice.h_a.at(iz);
    if (quantity == Quantity::Capacity) {
      if (!(h > 0.0))
        throw DomainError("capacity lattice altitudes must be positive");
      rates.push_back({0.0, RateMethod::ClosedForm});
    } else {
      rates.push_back(hop_rate(scenario, h));
    }
  }

  GridField field{lattice, quantity, std::vector<double>(lattice.size())};
  const std::size_t plane = static_cast<std::size_t>(lattice.x.count) * lattice.y.count;
  parallel_for(lattice.size(), threads, [&](std::size_t i) {
    const int iz = static_cast<int>(i / plane);
    const std::size_t rem = i % plane;
    const int iy = static_cast<int>(rem / lattice.x.count);
    const int ix = static_cast<int>(rem % lattice.x.count);
    const AirPosition air{lattice.x.at(ix), lattice.y.at(iy), lattice.h_a.at(iz)};
    const LosClosedForm& rate = rates[static_cast<std::size_t>(iz)];
    double v = 0.0;
    switch (quantity) {
    case Quantity::Los: {
      const auto [r_a, r_b] = horizontal_distances(scenario, air);
      v = rate.probability(r_a) * rate.probability(r_b);
      break;
    }
    case Quantity::Capacity:
      v = capacity_two_hop(scenario, radio, air);
      break;
    case Quantity::Throughput:
      v = throughput_two_hop(scenario, radio, air, rate);
      break;
    case Quantity::Altitude:
      break;
    }
    field.values[i] = v;
  });
  return field;
}

namespace {

// One oriented marching-squares segment between two lattice edges.
struct Segment
{
  std::size_t from_edge;
  std::size_t to_edge;
};

class SliceTracer
{
public:
  SliceTracer(const GridField& field, int iz, double level)
      : field_(field), lat_(field.lattice), iz_(iz), level_(level),
        horizontal_edges_(static_cast<std::size_t>(lat_.x.count - 1) * lat_.y.count)
  {
  }

  ContourSlice trace()
  {
    collect_segments();
    return link_segments();
  }

private:
  [[nodiscard]] double value(int ix, int iy) const { return field_.at(ix, iy, iz_); }

  [[nodiscard]] std::size_t h_edge(int ix, int iy) const
  {
    return static_cast<std::size_t>(iy) * (lat_.x.count - 1) + ix;
  }

  [[nodiscard]] std::size_t v_edge(int ix, int iy) const
  {
    return horizontal_edges_ + static_cast<std::size_t>(iy) * lat_.x.count + ix;
  }

  // Crossing point of an edge, always interpolated from the edge's lower-index vertex.
  [[nodiscard]] Point2 edge_point(std::size_t edge) const
  {
    int ix0 = 0, iy0 = 0, ix1 = 0, iy1 = 0;
    if (edge < horizontal_edges_) {
      ix0 = static_cast<int>(edge % (lat_.x.count - 1));
      iy0 = static_cast<int>(edge / (lat_.x.count - 1));
      ix1 = ix0 + 1;
      iy1 = iy0;
    } else {
      const std::size_t e = edge - horizontal_edges_;
      ix0 = static_cast<int>(e % lat_.x.count);
      iy0 = static_cast<int>(e / lat_.x.count);
      ix1 = ix0;
      iy1 = iy0 + 1;
    }
    const double v0 = value(ix0, iy0);
    const double v1 = value(ix1, iy1);
    const double t = (level_ - v0) / (v1 - v0);
    const double x0 = lat_.x.at(ix0), y0 = lat_.y.at(iy0);
    return {x0 + t * (lat_.x.at(ix1) - x0), y0 + t * (lat_.y.at(iy1) - y0)};
  }

  void collect_segments()
  {
    for (int iy = 0; iy + 1 < lat_.y.count; ++iy) {
      for (int ix = 0; ix + 1 < lat_.x.count; ++ix) {
        // Corners counter-clockwise: (0,0) (1,0) (1,1) (0,1); edge k joins corner k to k+1.
        const double v[4] = {value(ix, iy), value(ix + 1, iy), value(ix + 1, iy + 1), value(ix, iy + 1)};
        const std::size_t edges[4] = {h_edge(ix, iy), v_edge(ix + 1, iy), h_edge(ix, iy + 1), v_edge(ix, iy)};
        bool inside[4];
        for (int k = 0; k < 4; ++k)
          inside[k] = v[k] >= level_;

        // Crossings in counter-clockwise order; `exits` marks inside -> outside.
        std::size_t cross[4];
        bool exits[4];
        int n = 0;
        for (int k = 0; k < 4; ++k) {
          if (inside[k] != inside[(k + 1) % 4]) {
            cross[n] = edges[k];
            exits[n] = inside[k];
            ++n;
          }
        }
        if (n == 0)
          continue;

        // With the region on the left, a segment runs from an exit crossing to an
        // entry crossing. Saddles pick the partner from the cell-centre average.
        bool pair_forward = true;
        if (n == 4)
          pair_forward = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level_;
        for (int k = 0; k < n; ++k) {
          if (!exits[k])
            continue;
          const int partner = pair_forward ? (k + 1) % n : (k + n - 1) % n;
          segments_.push_back({cross[k], cross[partner]});
        }
      }
    }
  }

  ContourSlice link_segments()
  {
    ContourSlice slice{lat_.h_a.at(iz_), {}, 0.0, 0};
    std::unordered_map<std::size_t, std::size_t> starting_at;
    std::unordered_map<std::size_t, std::size_t> ending_at;
    starting_at.reserve(segments_.size());
    ending_at.reserve(segments_.size());
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      starting_at.emplace(segments_[s].from_edge, s);
      ending_at.emplace(segments_[s].to_edge, s);
    }

    std::vector<bool> used(segments_.size(), false);
    const auto walk = [&](std::size_t first) {
      Polyline line{{edge_point(segments_[first].from_edge)}, false};
      std::size_t s = first;
      while (true) {
        used[s] = true;
        const std::size_t next_edge = segments_[s].to_edge;
        const auto it = starting_at.find(next_edge);
        if (it == starting_at.end()) {
          line.points.push_back(edge_point(next_edge));
          break;
        }
        if (it->second == first) {
          line.closed = true;
          break;
        }
        line.points.push_back(edge_point(next_edge));
        s = it->second;
      }
      return line;
    };

    // Open lines start where no segment ends (the lattice boundary); the rest are rings.
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s] && !ending_at.contains(segments_[s].from_edge))
        slice.polylines.push_back(walk(s));
    }
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s])
        slice.polylines.push_back(walk(s));
    }

    for (const auto& line : slice.polylines) {
      if (!line.closed) {
        ++slice.open_polylines;
        continue;
      }
      double twice_area = 0.0;
      const std::size_t m = line.points.size();
      for (std::size_t i = 0; i < m; ++i) {
        const Point2& p = line.points[i];
        const Point2& q = line.points[(i + 1) % m];
        twice_area += p[0] * q[1] - q[0] * p[1];
      }
      slice.enclosed_area += 0.5 * twice_area;
    }
    return slice;
  }

  const GridField& field_;
  const Lattice& lat_;
  int iz_;
  double level_;
  std::size_t horizontal_edges_;
  std::vector<Segment> segments_;
};

} // namespace

ContourSet iso_contours(const GridField& field, double level)
{
  validate_lattice(field.lattice);
  ContourSet set{level, {}};
  if (field.values.empty())
    return set;
  const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
  if (!(level > *lo) || level > *hi)
    return set;
  for (int iz = 0; iz < field.lattice.h_a.count; ++iz)
    set.slices.push_back(SliceTracer(field, iz, level).trace());
  return set;
}

AreaTurnover cross_section_turnover(const Scenario& scenario, const RadioConfig& radio, Quantity quantity, double level,
                                    const Lattice& lattice, int threads)
{
  validate_lattice(lattice);
  if (lattice.h_a.count < 3)
    throw DomainError("turnover search needs at least three altitudes");

  AreaTurnover out{};
  for (int iz = 0; iz < lattice.h_a.count; ++iz) {
    const double h = lattice.h_a.at(iz);
    const GridField slice = grid_field(scenario, radio, quantity, Lattice::planar(lattice.x, lattice.y, h), threads);
    const ContourSet contours = iso_contours(slice, level);
    out.altitudes.push_back(h);
    out.areas.push_back(contours.empty() ? 0.0 : contours.slices.front().enclosed_area);
  }

  const auto best = std::max_element(out.areas.begin(), out.areas.end());
  const std::size_t i = static_cast<std::size_t>(best - out.areas.begin());
  out.h_peak = out.altitudes[i];
  out.peak_area = *best;
  out.interior_peak = i > 0 && i + 1 < out.areas.size();
  if (out.interior_peak) {
    const double a0 = out.areas[i - 1], a1 = out.areas[i], a2 = out.areas[i + 1];
    const double curvature = a0 - 2.0 * a1 + a2;
    if (curvature < 0.0) {
      const double shift = 0.5 * (a0 - a2) / curvature;
      const double s = lattice.h_a.step();
      out.h_peak = out.altitudes[i] + shift * s;
      out.peak_area = a1 - 0.125 * (a0 - a2) * (a0 - a2) / curvature;
    }
  }
  return out;
}

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const GridField& field)
{
  const Lattice& lat = field.lattice;
  os << "x,y,h_a,value\n";
  for (int iz = 0; iz < lat.h_a.count; ++iz)
    for (int iy = 0; iy < lat.y.count; ++iy)
      for (int ix = 0; ix < lat.x.count; ++ix)
        os << format_double(lat.x.at(ix)) << ',' << format_double(lat.y.at(iy)) << ','
           << format_double(lat.h_a.at(iz)) << ',' << format_double(field.at(ix, iy, iz)) << '\n';
}

nlohmann::json to_json(const ContourSet& contours)
{
  nlohmann::json slices = nlohmann::json::array();
  for (const auto& s : contours.slices) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& line : s.polylines) {
      nlohmann::json pts = nlohmann::json::array();
      for (const auto& p : line.points)
        pts.push_back({p[0], p[1]});
      lines.push_back({{"closed", line.closed}, {"points", std::move(pts)}});
    }
    slices.push_back({{"h_a", s.h_a},
                      {"enclosed_area", s.enclosed_area},
                      {"open_polylines", s.open_polylines},
                      {"polylines", std::move(lines)}});
  }
  return {{"level", contours.level}, {"slices", std::move(slices)}};
}

nlohmann::json to_json(const EllipseResult& e)
{
  nlohmann::json j{{"feasible", e.feasible()}, {"status", to_string(e.status)}};
  j["c"] = std::isfinite(e.c) ? nlohmann::json(e.c) : nlohmann::json(nullptr);
  if (e.ellipse) {
    j["center"] = {e.ellipse->center_x, e.ellipse->center_y};
    j["semi_major"] = e.ellipse->semi_major;
    j["semi_minor"] = e.ellipse->semi_minor;
    j["eccentricity"] = e.ellipse->eccentricity();
  } else {
    j["semi_major"] = nullptr;
    j["semi_minor"] = nullptr;
  }
  return j;
}

} // namespace skyrelay
