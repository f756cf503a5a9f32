// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "skyrelay/manifolds.hpp"
#include "skyrelay/optimize.hpp"
#include "skyrelay/scenario.hpp"

namespace skyrelay {

/// Optional per-document defaults for the analysis commands.
struct DocumentDefaults
{
  std::optional<Bracket> bracket;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<Lattice> lattice;
  std::optional<double> margin; ///< 2-D forest region margin, meters
};

/// A scenario file. Schema (TOML shown; JSON uses the same nesting):
///
///   [scenario]            g, h_g, lambda0
///   [scenario.heights]    type = "uniform", h_max   |   type = "truncated_gaussian", mu, sigma
///   [radio]               bandwidth_hz, snr0_db, alpha, d0
///   [forest2d]            lambda_f, mean_width, optional heights table (defaults to scenario.heights)
///   [defaults]            bracket = [lo, hi], trials, seed, margin,
///                         lattice = { x = [min, max, count], y = [...], h_a = [...] or a number }
///
/// Unknown keys anywhere are rejected.
struct ScenarioDocument
{
  Scenario scenario;
  RadioConfig radio;
  std::optional<ForestModel2D> forest2d;
  DocumentDefaults defaults;
  std::vector<std::string> warnings; ///< non-fatal validation findings
};

enum class DocumentFormat { Toml, Json };

/// Parses and validates. Throws ConfigError on syntax errors, unknown keys,
/// missing or mistyped fields, or validation errors.
ScenarioDocument parse_document(std::string_view text, DocumentFormat format);

/// Format from the extension (.toml / .json), falling back to content sniffing.
ScenarioDocument load_document(const std::filesystem::path& path);

ScenarioDocument document_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioDocument& doc);

nlohmann::json to_json(const HeightDistribution& dist);
nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const RadioConfig& radio);

/// Lattice string for the command line: "x=min:max:count,y=min:max:count[,h=min:max:count|h=value]".
/// A missing altitude axis is returned as count 0 so callers can supply one.
Lattice parse_lattice_spec(std::string_view spec);

} // namespace skyrelay
