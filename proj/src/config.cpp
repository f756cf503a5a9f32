// SPDX-License-Identifier: Apache-2.0
#include "skyrelay/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "skyrelay/errors.hpp"

namespace skyrelay {

using nlohmann::json;

namespace {

json toml_to_json(const toml::node& node)
{
  if (const auto* t = node.as_table()) {
    json j = json::object();
    for (auto&& [key, value] : *t)
      j[std::string(key.str())] = toml_to_json(value);
    return j;
  }
  if (const auto* a = node.as_array()) {
    json j = json::array();
    for (auto&& value : *a)
      j.push_back(toml_to_json(value));
    return j;
  }
  if (const auto* v = node.as_floating_point())
    return v->get();
  if (const auto* v = node.as_integer())
    return v->get();
  if (const auto* v = node.as_boolean())
    return v->get();
  if (const auto* v = node.as_string())
    return v->get();
  throw ConfigError("unsupported TOML value type (dates and times are not part of the schema)");
}

// Strict view over one JSON object: every key must be consumed or declared.
class ObjectReader
{
public:
  ObjectReader(const json& j, std::string path, std::initializer_list<const char*> allowed) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
      throw ConfigError(where() + " must be a table/object");
    for (const auto& [key, _] : j_.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
        throw ConfigError("unknown key '" + key + "' in " + where());
    }
  }

  [[nodiscard]] bool has(const char* key) const { return j_.contains(key); }

  [[nodiscard]] const json& at(const char* key) const
  {
    if (!j_.contains(key))
      throw ConfigError("missing required key '" + std::string(key) + "' in " + where());
    return j_.at(key);
  }

  [[nodiscard]] double number(const char* key) const { return as_number(at(key), child(key)); }

  [[nodiscard]] std::optional<double> opt_number(const char* key) const
  {
    if (!has(key))
      return std::nullopt;
    return number(key);
  }

  [[nodiscard]] std::string string(const char* key) const
  {
    const json& v = at(key);
    if (!v.is_string())
      throw ConfigError(child(key) + " must be a string");
    return v.get<std::string>();
  }

  [[nodiscard]] std::optional<std::uint64_t> opt_count(const char* key) const
  {
    if (!has(key))
      return std::nullopt;
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw ConfigError(child(key) + " must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  [[nodiscard]] std::string child(const char* key) const { return path_.empty() ? key : path_ + "." + key; }
  [[nodiscard]] std::string where() const { return path_.empty() ? "document root" : "'" + path_ + "'"; }

  static double as_number(const json& v, const std::string& name)
  {
    if (!v.is_number())
      throw ConfigError(name + " must be a number");
    return v.get<double>();
  }

private:
  const json& j_;
  std::string path_;
};

HeightDistribution heights_from_json(const json& j, const std::string& path)
{
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ConfigError("'" + path + "' needs a string 'type' (uniform or truncated_gaussian)");
  const std::string type = j.at("type").get<std::string>();
  if (type == "uniform") {
    ObjectReader r(j, path, {"type", "h_max"});
    return UniformHeights{r.number("h_max")};
  }
  if (type == "truncated_gaussian") {
    ObjectReader r(j, path, {"type", "mu", "sigma"});
    return TruncatedGaussianHeights{r.number("mu"), r.number("sigma")};
  }
  throw ConfigError("unknown height distribution type '" + type + "' in '" + path + "'");
}

Axis axis_from_json(const json& j, const std::string& name)
{
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v, 1};
  }
  if (!j.is_array() || j.size() != 3 || !j[2].is_number_integer())
    throw ConfigError(name + " must be [min, max, count] (or a single altitude)");
  return {ObjectReader::as_number(j[0], name + "[0]"), ObjectReader::as_number(j[1], name + "[1]"),
          j[2].get<int>()};
}

void collect(const ValidationReport& report, const std::string& section, std::vector<std::string>& warnings)
{
  if (report.has_errors())
    throw ConfigError("invalid " + section + ":\n" + report.to_string());
  for (const auto& issue : report.issues)
    warnings.push_back(section + "." + issue.field + ": " + issue.message);
}

json axis_to_json(const Axis& a)
{
  if (a.count == 1)
    return a.min;
  return json::array({a.min, a.max, a.count});
}

} // namespace

ScenarioDocument document_from_json(const json& j)
{
  ObjectReader root(j, "", {"scenario", "radio", "forest2d", "defaults"});
  ScenarioDocument doc{};

  {
    ObjectReader s(root.at("scenario"), "scenario", {"g", "h_g", "lambda0", "heights"});
    doc.scenario = Scenario{s.number("g"), s.number("h_g"), s.number("lambda0"),
                            heights_from_json(s.at("heights"), "scenario.heights")};
  }
  {
    ObjectReader r(root.at("radio"), "radio", {"bandwidth_hz", "snr0_db", "alpha", "d0"});
    doc.radio = RadioConfig{r.number("bandwidth_hz"), r.number("snr0_db"), r.number("alpha"), r.number("d0")};
  }
  if (root.has("forest2d")) {
    ObjectReader f(root.at("forest2d"), "forest2d", {"lambda_f", "mean_width", "heights"});
    doc.forest2d = ForestModel2D{f.number("lambda_f"), f.number("mean_width"),
                                 f.has("heights") ? heights_from_json(f.at("heights"), "forest2d.heights")
                                                  : doc.scenario.heights};
  }
  if (root.has("defaults")) {
    ObjectReader d(root.at("defaults"), "defaults", {"bracket", "trials", "seed", "lattice", "margin"});
    if (d.has("bracket")) {
      const json& b = d.at("bracket");
      if (!b.is_array() || b.size() != 2)
        throw ConfigError("defaults.bracket must be [low, high]");
      doc.defaults.bracket = Bracket{ObjectReader::as_number(b[0], "defaults.bracket[0]"),
                                     ObjectReader::as_number(b[1], "defaults.bracket[1]")};
    }
    doc.defaults.trials = d.opt_count("trials");
    doc.defaults.seed = d.opt_count("seed");
    doc.defaults.margin = d.opt_number("margin");
    if (d.has("lattice")) {
      ObjectReader l(d.at("lattice"), "defaults.lattice", {"x", "y", "h_a"});
      Lattice lat{axis_from_json(l.at("x"), "defaults.lattice.x"), axis_from_json(l.at("y"), "defaults.lattice.y"),
                  l.has("h_a") ? axis_from_json(l.at("h_a"), "defaults.lattice.h_a") : Axis{0.0, 0.0, 0}};
      doc.defaults.lattice = lat;
    }
  }

  collect(validate(doc.scenario), "scenario", doc.warnings);
  collect(validate(doc.radio), "radio", doc.warnings);
  if (doc.forest2d)
    collect(validate(*doc.forest2d), "forest2d", doc.warnings);
  if (doc.defaults.trials && *doc.defaults.trials < 1)
    throw ConfigError("defaults.trials must be at least 1");
  if (doc.defaults.bracket &&
      (!(doc.defaults.bracket->low > doc.scenario.h_g) || !(doc.defaults.bracket->high > doc.defaults.bracket->low)))
    throw ConfigError("defaults.bracket must satisfy h_g < low < high");
  return doc;
}

ScenarioDocument parse_document(std::string_view text, DocumentFormat format)
{
  json j;
  if (format == DocumentFormat::Json) {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("JSON syntax error: ") + e.what());
    }
  } else {
    try {
      const toml::table table = toml::parse(text);
      j = toml_to_json(table);
    } catch (const toml::parse_error& e) {
      std::ostringstream os;
      os << "TOML syntax error at line " << e.source().begin.line << ": " << e.description();
      throw ConfigError(os.str());
    }
  }
  return document_from_json(j);
}

ScenarioDocument load_document(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const std::string ext = path.extension().string();
  DocumentFormat format = DocumentFormat::Toml;
  if (ext == ".json") {
    format = DocumentFormat::Json;
  } else if (ext != ".toml") {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
      format = DocumentFormat::Json;
  }
  return parse_document(text, format);
}

json to_json(const HeightDistribution& dist)
{
  if (const auto* u = std::get_if<UniformHeights>(&dist))
    return {{"type", "uniform"}, {"h_max", u->h_max}};
  const auto& tg = std::get<TruncatedGaussianHeights>(dist);
  return {{"type", "truncated_gaussian"}, {"mu", tg.mu}, {"sigma", tg.sigma}};
}

json to_json(const Scenario& scenario)
{
  return {{"g", scenario.g}, {"h_g", scenario.h_g}, {"lambda0", scenario.lambda0}, {"heights", to_json(scenario.heights)}};
}

json to_json(const RadioConfig& radio)
{
  return {{"bandwidth_hz", radio.bandwidth_hz}, {"snr0_db", radio.snr0_db}, {"alpha", radio.alpha}, {"d0", radio.d0}};
}

json to_json(const ScenarioDocument& doc)
{
  json j{{"scenario", to_json(doc.scenario)}, {"radio", to_json(doc.radio)}};
  if (doc.forest2d) {
    j["forest2d"] = {{"lambda_f", doc.forest2d->lambda_f},
                     {"mean_width", doc.forest2d->mean_width},
                     {"heights", to_json(doc.forest2d->heights)}};
  }
  json d = json::object();
  if (doc.defaults.bracket)
    d["bracket"] = {doc.defaults.bracket->low, doc.defaults.bracket->high};
  if (doc.defaults.trials)
    d["trials"] = *doc.defaults.trials;
  if (doc.defaults.seed)
    d["seed"] = *doc.defaults.seed;
  if (doc.defaults.margin)
    d["margin"] = *doc.defaults.margin;
  if (doc.defaults.lattice) {
    json l{{"x", axis_to_json(doc.defaults.lattice->x)}, {"y", axis_to_json(doc.defaults.lattice->y)}};
    if (doc.defaults.lattice->h_a.count > 0)
      l["h_a"] = axis_to_json(doc.defaults.lattice->h_a);
    d["lattice"] = std::move(l);
  }
  if (!d.empty())
    j["defaults"] = std::move(d);
  return j;
}

Lattice parse_lattice_spec(std::string_view spec)
{
  Lattice lat{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  bool seen_x = false, seen_y = false;
  const auto number = [&](std::string_view s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used != s.size())
        throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + std::string(s) + "' in lattice spec");
    }
  };
  const auto parse_axis = [&](std::string_view body) -> Axis {
    const auto c1 = body.find(':');
    if (c1 == std::string_view::npos) {
      const double v = number(body);
      return {v, v, 1};
    }
    const auto c2 = body.find(':', c1 + 1);
    if (c2 == std::string_view::npos)
      throw ConfigError("lattice axis '" + std::string(body) + "' must be min:max:count");
    const double count = number(body.substr(c2 + 1));
    if (count != std::floor(count) || count < 1)
      throw ConfigError("lattice axis count must be a positive integer");
    return {number(body.substr(0, c1)), number(body.substr(c1 + 1, c2 - c1 - 1)), static_cast<int>(count)};
  };

  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string_view item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("lattice spec item '" + std::string(item) + "' must look like name=min:max:count");
    const std::string_view name = item.substr(0, eq);
    const Axis axis = parse_axis(item.substr(eq + 1));
    if (name == "x") {
      lat.x = axis;
      seen_x = true;
    } else if (name == "y") {
      lat.y = axis;
      seen_y = true;
    } else if (name == "h" || name == "h_a") {
      lat.h_a = axis;
    } else {
      throw ConfigError("unknown lattice axis '" + std::string(name) + "'");
    }
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  if (!seen_x || !seen_y)
    throw ConfigError("lattice spec needs both x and y axes");
  return lat;
}

} // namespace skyrelay
