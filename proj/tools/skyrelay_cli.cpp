// SPDX-License-Identifier: Apache-2.0
// skyrelay: command-line front end. JSON and CSV go to stdout or --out, logs to stderr.
//
// Exit codes: 0 success, 2 config or command-line error, 3 domain error,
// 4 validation failure, 1 anything else.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skyrelay/config.hpp"
#include "skyrelay/errors.hpp"
#include "skyrelay/link.hpp"
#include "skyrelay/los.hpp"
#include "skyrelay/manifolds.hpp"
#include "skyrelay/montecarlo.hpp"
#include "skyrelay/optimize.hpp"
#include "skyrelay/validation.hpp"

namespace {

using namespace skyrelay;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitValidation = 4;

struct Common
{
  std::string config;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* cmd, Common& common, bool threads)
{
  cmd->add_option("-c,--config", common.config, "scenario file (.toml or .json)")->required();
  cmd->add_option("-o,--out", common.out, "write the result here instead of stdout");
  if (threads)
    cmd->add_option("--threads", common.threads, "worker threads, 0 = all cores (results do not depend on it)");
}

ScenarioDocument load(const Common& common)
{
  ScenarioDocument doc = load_document(common.config);
  for (const auto& w : doc.warnings)
    std::cerr << "warning: " << w << '\n';
  return doc;
}

void emit(const Common& common, const std::string& text)
{
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(common.out, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write '" + common.out + "'");
  os << text;
}

void emit_json(const Common& common, const json& j)
{
  emit(common, j.dump(2) + "\n");
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write '" + path + "'");
  os << text;
}

AirPosition air_from(const std::vector<double>& v)
{
  return {v.at(0), v.at(1), v.at(2)};
}

std::string method_name(RateMethod m)
{
  return m == RateMethod::ClosedForm ? "closed_form" : "numeric_fallback";
}

// ---------------------------------------------------------------------------

struct LosArgs
{
  Common common;
  std::vector<double> air;
  double r_i = 0.0;
  double altitude = 0.0;
  std::string hop = "two";
  bool numeric = false;
};

int run_los(const LosArgs& a, bool have_air)
{
  const ScenarioDocument doc = load(a.common);
  const Scenario& s = doc.scenario;
  json j;
  if (!have_air) {
    const HopLos hop = los_prob_single(s, a.altitude, a.r_i);
    j = {{"hop", "single"}, {"h_a", a.altitude}, {"r_i", a.r_i}, {"probability", hop.probability},
         {"kappa", hop.rate.kappa}, {"method", method_name(hop.rate.validity)}};
    if (a.numeric)
      j["numeric"] = los_prob_single_numeric(s, a.altitude, a.r_i);
  } else {
    const AirPosition air = air_from(a.air);
    const auto [r_a, r_b] = horizontal_distances(s, air);
    const LosClosedForm rate = hop_rate(s, air.h_a);
    const double p_a = rate.probability(r_a);
    const double p_b = rate.probability(r_b);
    const bool two = a.hop == "two";
    j = {{"hop", a.hop},
         {"air", {air.x, air.y, air.h_a}},
         {"r_a", r_a},
         {"r_b", r_b},
         {"probability_a", p_a},
         {"probability_b", p_b},
         {"probability", two ? los_prob_two_hop(s, air) : p_a},
         {"kappa", rate.kappa},
         {"method", method_name(rate.validity)}};
    if (a.numeric) {
      const double n_a = los_prob_single_numeric(s, air.h_a, r_a);
      j["numeric"] = two ? n_a * los_prob_single_numeric(s, air.h_a, r_b) : n_a;
    }
  }
  emit_json(a.common, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct EllipseArgs
{
  Common common;
  double p = 0.0;
  double altitude = 0.0;
  int samples = 16;
  std::string csv;
};

int run_ellipse(const EllipseArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  if (a.samples < 1)
    throw DomainError("--samples must be at least 1");
  const EllipseResult e = ellipse_constant_los(doc.scenario, a.p, a.altitude);
  json j = to_json(e);
  j["p"] = a.p;
  j["h_a"] = a.altitude;
  std::ostringstream csv;
  csv << "x,y\n";
  json pts = json::array();
  if (e.ellipse) {
    for (const Point2& q : e.ellipse->sample(a.samples)) {
      pts.push_back({q[0], q[1]});
      csv << format_double(q[0]) << ',' << format_double(q[1]) << '\n';
    }
  }
  j["points"] = std::move(pts);
  if (!a.csv.empty())
    write_file(a.csv, csv.str());
  emit_json(a.common, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MinAltitudeArgs
{
  Common common;
  double p = 0.0;
  MinAltitudeOptions options;
};

int run_min_altitude(const MinAltitudeArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  const MinAltitude m = min_altitude_for_los(doc.scenario, a.p, a.options);
  json j{{"p", a.p}, {"status", to_string(m.status)}, {"method", method_name(m.method)}};
  j["h_min"] = m.status == SumStatus::Infeasible ? json(nullptr) : json(m.h_min);
  emit_json(a.common, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

Lattice lattice_from(const std::string& spec, const ScenarioDocument& doc, std::optional<double> altitude)
{
  Lattice lat{};
  if (!spec.empty())
    lat = parse_lattice_spec(spec);
  else if (doc.defaults.lattice)
    lat = *doc.defaults.lattice;
  else
    throw ConfigError("no --lattice given and the config has no defaults.lattice");
  if (altitude)
    lat.h_a = {*altitude, *altitude, 1};
  if (lat.h_a.count == 0)
    throw ConfigError("the lattice needs an altitude axis (h=...) or --altitude");
  return lat;
}

struct SurfaceArgs
{
  Common common;
  std::string quantity = "throughput";
  std::string lattice;
  std::optional<double> altitude;
  std::optional<double> iso;
  std::string contours;
};

int run_surface(const SurfaceArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  const Lattice lat = lattice_from(a.lattice, doc, a.altitude);
  const Quantity q = quantity_from_string(a.quantity);
  const GridField field = grid_field(doc.scenario, doc.radio, q, lat, a.common.threads);
  std::ostringstream csv;
  write_csv(csv, field);
  if (a.iso) {
    const ContourSet set = iso_contours(field, *a.iso);
    if (set.empty())
      std::cerr << "warning: level " << format_double(*a.iso) << " lies outside the field's range\n";
    json j = to_json(set);
    j["quantity"] = to_string(q);
    write_file(a.contours, j.dump(2) + "\n");
  }
  emit(a.common, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct TurnoverArgs
{
  Common common;
  std::string quantity = "throughput";
  std::string lattice;
  double level = 0.0;
};

int run_turnover(const TurnoverArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  const Lattice lat = lattice_from(a.lattice, doc, std::nullopt);
  const Quantity q = quantity_from_string(a.quantity);
  const AreaTurnover t = cross_section_turnover(doc.scenario, doc.radio, q, a.level, lat, a.common.threads);
  json j{{"quantity", to_string(q)},
         {"level", a.level},
         {"h_peak", t.h_peak},
         {"peak_area", t.peak_area},
         {"interior_peak", t.interior_peak},
         {"altitudes", t.altitudes},
         {"areas", t.areas}};
  emit_json(a.common, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct OptimizeArgs
{
  Common common;
  std::vector<double> at;
  std::string lattice;
  std::vector<double> bracket;
  OptimizeOptions options;
};

int run_optimize(const OptimizeArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  Bracket bracket = doc.defaults.bracket.value_or(default_bracket(doc.scenario));
  if (!a.bracket.empty())
    bracket = {a.bracket.at(0), a.bracket.at(1)};
  if (!a.at.empty()) {
    emit_json(a.common, to_json(optimal_altitude(doc.scenario, doc.radio, a.at.at(0), a.at.at(1), bracket, a.options)));
    return kExitOk;
  }
  // Only the planar axes matter; the altitude comes from the optimizer.
  const Lattice lat = lattice_from(a.lattice, doc, bracket.low);
  const ThroughputSurface surface =
      max_throughput_surface(doc.scenario, doc.radio, lat.x, lat.y, bracket, a.options, a.common.threads);
  std::ostringstream csv;
  write_csv(csv, surface);
  emit(a.common, csv.str());
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs
{
  Common common;
  std::string mode = "1d";
  std::string metric = "los";
  std::vector<double> air;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> margin;
};

int run_simulate(const SimulateArgs& a)
{
  const ScenarioDocument doc = load(a.common);
  const AirPosition air = air_from(a.air);
  const TrialConfig tc{a.trials.value_or(doc.defaults.trials.value_or(100000)),
                       a.seed.value_or(doc.defaults.seed.value_or(0)), a.common.threads};
  EmpiricalEstimate est{};
  json analytic;
  if (a.mode == "2d") {
    if (!doc.forest2d)
      throw ConfigError("--mode 2d needs a [forest2d] section in the config");
    if (a.metric != "los")
      throw DomainError("--mode 2d supports --metric los only");
    const ForestModel2D& f = *doc.forest2d;
    const double margin = a.margin.value_or(doc.defaults.margin.value_or(3.0 * f.mean_width));
    est = simulate_forest_2d(f, doc.scenario, air, margin, tc);
    // The matching 1-D model has line density lambda_f * E(W) and the forest's height law.
    Scenario equivalent = doc.scenario;
    equivalent.lambda0 = f.line_density();
    equivalent.heights = f.heights;
    analytic = los_prob_two_hop(equivalent, air);
  } else if (a.metric == "throughput") {
    est = empirical_throughput(doc.scenario, doc.radio, air, tc);
    analytic = throughput_two_hop(doc.scenario, doc.radio, air);
  } else {
    est = simulate_two_hop(doc.scenario, air, tc);
    analytic = los_prob_two_hop(doc.scenario, air);
  }
  json j = to_json(est);
  j["mode"] = a.mode;
  j["metric"] = a.metric;
  j["air"] = {air.x, air.y, air.h_a};
  j["analytic"] = analytic;
  emit_json(a.common, j);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ValidateArgs
{
  Common common;
  AgreementOptions options;
};

int run_validate(ValidateArgs a)
{
  const ScenarioDocument doc = load(a.common);
  a.options.threads = a.common.threads;
  const AgreementReport report = run_agreement(doc.scenario, a.options);
  emit_json(a.common, to_json(report));
  if (report.all_pass())
    return kExitOk;
  std::size_t bad = 0;
  for (const auto& c : report.quadrature)
    bad += c.pass ? 0 : 1;
  for (const auto& c : report.monte_carlo)
    bad += c.pass ? 0 : 1;
  std::cerr << "validation failed in " << bad << " cell(s)\n";
  return kExitValidation;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Airborne relay line-of-sight, capacity and placement analysis"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::function<int()> action;

  LosArgs los;
  auto* c_los = app.add_subcommand("los", "line-of-sight probability of one hop or of the two-hop relay link");
  add_common(c_los, los.common, false);
  auto* o_air = c_los->add_option("--air", los.air, "relay position x,y,h_a")->delimiter(',')->expected(3);
  auto* o_ri = c_los->add_option("--r-i", los.r_i, "horizontal hop length (single hop)");
  auto* o_alt = c_los->add_option("--altitude", los.altitude, "relay altitude, with --r-i");
  o_ri->needs(o_alt);
  o_alt->needs(o_ri);
  o_air->excludes(o_ri);
  c_los->add_option("--hop", los.hop, "single: hop to the asset at the origin; two: both hops")
      ->check(CLI::IsMember({"single", "two"}));
  c_los->add_flag("--numeric", los.numeric, "also report the adaptive-quadrature value");
  c_los->callback([&] {
    if (!*o_air && !*o_ri)
      throw CLI::ValidationError("los", "give either --air or --r-i with --altitude");
    action = [&, have_air = static_cast<bool>(*o_air)] { return run_los(los, have_air); };
  });

  EllipseArgs ell;
  auto* c_ell = app.add_subcommand("ellipse", "constant two-hop LoS ellipse at one altitude");
  add_common(c_ell, ell.common, false);
  c_ell->add_option("--p", ell.p, "target two-hop LoS probability")->required();
  c_ell->add_option("--altitude", ell.altitude, "relay altitude")->required();
  c_ell->add_option("--samples", ell.samples, "number of sampled points")->capture_default_str();
  c_ell->add_option("--csv", ell.csv, "also write the sampled points as CSV (x,y)");
  c_ell->callback([&] { action = [&] { return run_ellipse(ell); }; });

  MinAltitudeArgs mina;
  auto* c_min = app.add_subcommand("min-altitude", "lowest altitude reaching a two-hop LoS probability");
  add_common(c_min, mina.common, false);
  c_min->add_option("--p", mina.p, "target two-hop LoS probability")->required();
  c_min->add_option("--upper", mina.options.upper, "search limit in meters")->capture_default_str();
  c_min->add_option("--tolerance", mina.options.tolerance, "bisection tolerance in meters")->capture_default_str();
  c_min->callback([&] { action = [&] { return run_min_altitude(mina); }; });

  SurfaceArgs surf;
  auto* c_surf = app.add_subcommand("surface", "sample a quantity on a lattice (CSV x,y,h_a,value)");
  add_common(c_surf, surf.common, true);
  c_surf->add_option("--quantity", surf.quantity, "los, capacity or throughput")
      ->check(CLI::IsMember({"los", "capacity", "throughput"}))
      ->capture_default_str();
  c_surf->add_option("--lattice", surf.lattice, "x=min:max:count,y=min:max:count[,h=min:max:count|h=value]");
  c_surf->add_option("--altitude", surf.altitude, "single altitude slice (overrides the lattice's h axis)");
  auto* o_iso = c_surf->add_option("--iso", surf.iso, "extract iso-contours at this level");
  auto* o_cont = c_surf->add_option("--contours", surf.contours, "JSON file for the contours of --iso");
  o_iso->needs(o_cont);
  o_cont->needs(o_iso);
  c_surf->callback([&] { action = [&] { return run_surface(surf); }; });

  TurnoverArgs turn;
  auto* c_turn = app.add_subcommand("turnover", "enclosed area above a level per altitude slice, and its peak");
  add_common(c_turn, turn.common, true);
  c_turn->add_option("--quantity", turn.quantity, "los, capacity or throughput")
      ->check(CLI::IsMember({"los", "capacity", "throughput"}))
      ->capture_default_str();
  c_turn->add_option("--level", turn.level, "iso level")->required();
  c_turn->add_option("--lattice", turn.lattice, "lattice with at least three altitudes");
  c_turn->callback([&] { action = [&] { return run_turnover(turn); }; });

  OptimizeArgs opt;
  auto* c_opt = app.add_subcommand("optimize", "throughput-optimal altitude at one point or over a lattice");
  add_common(c_opt, opt.common, true);
  auto* o_at = c_opt->add_option("--at", opt.at, "ground point x,y")->delimiter(',')->expected(2);
  auto* o_lat = c_opt->add_option("--lattice", opt.lattice, "x=min:max:count,y=min:max:count (CSV x,y,h_star,t_star)");
  o_at->excludes(o_lat);
  c_opt->add_option("--bracket", opt.bracket, "altitude search range lo,hi")->delimiter(',')->expected(2);
  c_opt->add_option("--scan-points", opt.options.scan_points, "coarse scan size")->capture_default_str();
  c_opt->add_option("--tolerance", opt.options.tolerance, "refinement tolerance in meters")->capture_default_str();
  c_opt->callback([&] { action = [&] { return run_optimize(opt); }; });

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Monte Carlo estimate over sampled forests");
  add_common(c_sim, sim.common, true);
  c_sim->add_option("--mode", sim.mode, "1d: line model per hop; 2d: planar forest")
      ->check(CLI::IsMember({"1d", "2d"}))
      ->capture_default_str();
  c_sim->add_option("--metric", sim.metric, "los or throughput")
      ->check(CLI::IsMember({"los", "throughput"}))
      ->capture_default_str();
  c_sim->add_option("--air", sim.air, "relay position x,y,h_a")->delimiter(',')->expected(3)->required();
  c_sim->add_option("--trials", sim.trials, "number of trials");
  c_sim->add_option("--seed", sim.seed, "base seed");
  c_sim->add_option("--margin", sim.margin, "2d region margin in meters (at least 3 mean widths)");
  c_sim->callback([&] { action = [&] { return run_simulate(sim); }; });

  ValidateArgs val;
  auto* c_val = app.add_subcommand("validate", "closed form vs quadrature and analytic vs Monte Carlo");
  add_common(c_val, val.common, true);
  c_val->add_option("--grid", val.options.grid, "quadrature grid is N x N over (h_a, r_i)")->capture_default_str();
  c_val->add_option("--trials", val.options.trials, "trials per Monte Carlo cell")->capture_default_str();
  c_val->add_option("--seed", val.options.seed, "base seed")->capture_default_str();
  c_val->callback([&] { action = [&] { return run_validate(val); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
