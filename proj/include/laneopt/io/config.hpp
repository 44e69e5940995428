#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "laneopt/allocation.hpp"
#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"
#include "laneopt/published_ranges.hpp"

namespace laneopt::io {

struct SimulateOptions {
  std::uint64_t vehicles = 1'000'000;
  std::uint64_t trials = 10;
  std::uint64_t seed = 42;
  double tolerance = 0.01;  ///< max relative deviation accepted
};

struct CalibrateOptions {
  std::optional<std::string> targets_path;  ///< built-in published ranges when empty
  double d_min = 4000.0;
  double d_max = 6000.0;
  double d_step = 50.0;
};

struct RunConfig {
  std::optional<Scenario> scenario;
  std::optional<HeadwayProfile> profile;  ///< inline alternative to `scenario`
  int lanes = 2;
  double demand = kCanonicalDemand;
  std::optional<double> cav_lane_capacity;
  double grid_step = 0.01;
  std::optional<double> p;
  std::optional<SimulateOptions> simulate;
  CalibrateOptions calibrate;
  std::optional<std::string> output_dir;

  /// Throws InputError unless exactly one of scenario / profile is set.
  HeadwayProfile headways() const {
    if (scenario && profile) throw InputError("give either a scenario name or an inline profile, not both");
    if (scenario) return preset_profile(*scenario);
    if (profile) return *profile;
    throw InputError("no scenario: pass --scenario or set \"scenario\"/\"profile\" in the config");
  }

  FreewayConfig freeway() const { return {lanes, demand, headways(), cav_lane_capacity}; }
};

namespace detail {

inline std::string json_position(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw InputError(where + ": unknown key '" + key + "'");
  }
}

inline double number_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw InputError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

inline std::int64_t integer_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError(where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline std::uint64_t count_field(const nlohmann::json& obj, const std::string& key, const std::string& where) {
  const auto v = integer_field(obj, key, where);
  if (v < 0) throw InputError(where + ": field '" + key + "' must be non-negative");
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

/// Parses a JSON run configuration. `source` names the file in diagnostics.
inline RunConfig parse_run_config(std::string_view text, const std::string& source = "config") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source + ": malformed JSON at " + detail::json_position(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(source + ": top level must be an object");

  detail::reject_unknown(doc, {"scenario", "profile", "L", "D", "C_A", "grid_step", "p", "simulate",
                               "calibrate", "output_dir"},
                         source);
  RunConfig cfg;
  if (doc.contains("scenario")) {
    const auto& s = doc["scenario"];
    if (!s.is_string()) throw InputError(source + ": field 'scenario' must be a string");
    cfg.scenario = parse_scenario(s.get<std::string>());
    if (!cfg.scenario) {
      throw InputError(source + ": field 'scenario': unknown preset '" + s.get<std::string>() +
                       "' (expected neutral, conservative or aggressive)");
    }
  }
  if (doc.contains("profile")) {
    const auto& p = doc["profile"];
    const std::string where = source + ": profile";
    if (!p.is_object()) throw InputError(where + " must be an object");
    detail::reject_unknown(p, {"h_AA", "h_AM", "h_MA", "h_MM"}, where);
    for (const char* key : {"h_AA", "h_AM", "h_MA", "h_MM"}) {
      if (!p.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    }
    HeadwayProfile h{detail::number_field(p, "h_AA", where), detail::number_field(p, "h_AM", where),
                     detail::number_field(p, "h_MA", where), detail::number_field(p, "h_MM", where)};
    try {
      h.validate();
    } catch (const DomainError& e) {
      throw InputError(where + ": " + e.what());
    }
    cfg.profile = h;
  }
  if (cfg.scenario && cfg.profile) throw InputError(source + ": 'scenario' and 'profile' are mutually exclusive");

  if (doc.contains("L")) cfg.lanes = static_cast<int>(detail::integer_field(doc, "L", source));
  if (doc.contains("D")) cfg.demand = detail::number_field(doc, "D", source);
  if (doc.contains("C_A")) cfg.cav_lane_capacity = detail::number_field(doc, "C_A", source);
  if (doc.contains("grid_step")) cfg.grid_step = detail::number_field(doc, "grid_step", source);
  if (doc.contains("p")) cfg.p = detail::number_field(doc, "p", source);
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw InputError(source + ": field 'output_dir' must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("simulate")) {
    const auto& s = doc["simulate"];
    const std::string where = source + ": simulate";
    if (!s.is_object()) throw InputError(where + " must be an object");
    detail::reject_unknown(s, {"n", "trials", "seed", "tolerance"}, where);
    SimulateOptions o;
    if (s.contains("n")) o.vehicles = detail::count_field(s, "n", where);
    if (s.contains("trials")) o.trials = detail::count_field(s, "trials", where);
    if (s.contains("seed")) o.seed = detail::count_field(s, "seed", where);
    if (s.contains("tolerance")) o.tolerance = detail::number_field(s, "tolerance", where);
    cfg.simulate = o;
  }
  if (doc.contains("calibrate")) {
    const auto& c = doc["calibrate"];
    const std::string where = source + ": calibrate";
    if (!c.is_object()) throw InputError(where + " must be an object");
    detail::reject_unknown(c, {"targets", "d_min", "d_max", "d_step"}, where);
    if (c.contains("targets")) {
      if (!c["targets"].is_string()) throw InputError(where + ": field 'targets' must be a path string");
      cfg.calibrate.targets_path = c["targets"].get<std::string>();
    }
    if (c.contains("d_min")) cfg.calibrate.d_min = detail::number_field(c, "d_min", where);
    if (c.contains("d_max")) cfg.calibrate.d_max = detail::number_field(c, "d_max", where);
    if (c.contains("d_step")) cfg.calibrate.d_step = detail::number_field(c, "d_step", where);
  }
  return cfg;
}

/// Range checks shared by the file and flag paths.
inline void validate_run_config(const RunConfig& cfg) {
  if (!(cfg.grid_step > 0.0 && cfg.grid_step <= 1.0)) throw InputError("grid_step must lie in (0, 1]");
  if (!(std::isfinite(cfg.demand) && cfg.demand >= 0.0)) throw InputError("D must be a non-negative number");
  if (cfg.cav_lane_capacity && !(std::isfinite(*cfg.cav_lane_capacity) && *cfg.cav_lane_capacity > 0.0)) {
    throw InputError("C_A must be positive");
  }
  if (cfg.p && !(*cfg.p >= 0.0 && *cfg.p <= 1.0)) throw InputError("p must lie in [0, 1]");
  if (cfg.lanes < 1) throw InputError("L must be at least 1");
  if (cfg.scenario && cfg.profile) throw InputError("give either a scenario name or an inline profile, not both");
}

}  // namespace laneopt::io
