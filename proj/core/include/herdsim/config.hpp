#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "herdsim/grid.hpp"
#include "herdsim/models.hpp"
#include "herdsim/pde.hpp"

namespace herdsim {

/// One run, fully described: scenario, grid, horizon, solver knobs, output
/// options, scenario-parameter overrides and the optimizer block. The text
/// form is flat `key = value` lines with `#` comments; emit/parse round-trip
/// to an identical struct.
struct RunConfig {
  std::string scenario;
  GridSpec grid;
  double t_end = 0.0;
  std::vector<double> snapshot_times;
  double cfl_factor = 0.9;
  bool clamp = false;
  std::string out_dir = "out";
  bool format_csv = true;
  bool format_pgm = false;
  ParamOverrides overrides;

  int opt_budget = 200;
  int opt_nodes = 8;
  std::uint64_t opt_seed = 1;
  double opt_t_max = 0.75;
  int opt_nx = 100;
  bool opt_k_set = false;
  double opt_k_x0 = 0.0, opt_k_y0 = 0.0, opt_k_x1 = 0.0, opt_k_y1 = 0.0;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the line format; unknown keys, malformed numbers and a missing
/// scenario throw ConfigError carrying the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Canonical text form; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// The scenario model described by the config (overrides applied).
std::unique_ptr<ScenarioModel> build_model(const RunConfig& config);

/// Grid/horizon/snapshot defaults for a scenario name, used by parse_config
/// to fill unset keys.
struct ScenarioDefaults {
  double extent;
  int n;
  double t_end;
  std::vector<double> snapshot_times;
};
const ScenarioDefaults& scenario_defaults(const std::string& scenario);

}  // namespace herdsim
