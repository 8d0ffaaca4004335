#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "majoranon/dynamics.hpp"
#include "majoranon/field.hpp"
#include "majoranon/grid.hpp"

// Strict JSON run configuration: unknown keys are rejected, every value is
// validated, defaults are filled explicitly so the metadata echo shows the
// exact resolved run.

namespace majoranon::config {

struct TimeConfig {
  double dt = 0.0;
  long steps = 0;
  long record_every = 1;
};

struct OutputConfig {
  std::string series = "series.csv";
  // Optional per-record snapshot path pattern containing "{tag}"; empty
  // disables snapshots. simulate substitutes zero-padded step numbers,
  // decompose substitutes initial/plus/minus.
  std::string snapshots;
  std::string metadata = "metadata.json";
};

struct SimulationConfig {
  int dimension = 1;
  std::vector<int> n;
  std::vector<double> length;
  dynamics::EquationKind equation;
  fields::InitialSpec initial;
  dynamics::Backend backend = dynamics::Backend::decomposed;
  TimeConfig time;
  OutputConfig output;
  int oracle_cap = 4096;
};

// Parse and validate. Unreadable file -> IoError; malformed JSON ->
// ConfigError naming the line; unknown keys, wrong types, size mismatches,
// non-finite or out-of-range values -> ConfigError naming the key.
SimulationConfig parse_config(const std::string& path);
SimulationConfig parse_config_string(const std::string& text);

fields::Grid grid_from(const SimulationConfig& cfg);
fields::SpinorField initial_from(const SimulationConfig& cfg);

// Resolved-config echo (defaults filled), stable key order.
nlohmann::json config_json(const SimulationConfig& cfg);

// Fixed documentation of the numeric conventions the outputs assume.
nlohmann::json conventions_json();

// {config, conventions, versions, wall_seconds}.
nlohmann::json metadata_json(const SimulationConfig& cfg, double wall_seconds);

// Serialize metadata_json to path (2-space indent, trailing newline).
// Unwritable path -> IoError.
void write_metadata(const std::string& path, const SimulationConfig& cfg,
                    double wall_seconds);

// Substitute {tag} in a snapshot pattern.
std::string snapshot_path(const std::string& pattern, const std::string& tag);

}  // namespace majoranon::config
