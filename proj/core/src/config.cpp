#include "herdsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "herdsim/errors.hpp"

namespace herdsim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": malformed number '" +
                          v + "'",
                      line);
  }
}

long parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": malformed integer '" +
                          v + "'",
                      line);
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": expected true/false, got '" +
                        v + "'",
                    line);
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(item, line));
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::map<std::string, std::vector<std::string>>& scenario_param_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"piper",
       {"v_max", "rho_max", "speed_max", "speed_min", "omega", "kernel_radius",
        "start_x", "start_y", "rect_x0", "rect_x1", "rect_y0", "rect_y1",
        "rho0_scale"}},
      {"dogs",
       {"v_max", "rho_max", "alpha", "ell", "beta", "kernel_radius",
        "dog_speed", "start", "disc_cx", "disc_cy", "disc_radius",
        "rho0_scale"}},
      {"prey",
       {"v_max", "rho_max", "escape_rate", "escape_range", "drift_x", "drift_y",
        "accel_gain", "kernel_radius", "start_x", "start_y", "vel_x", "vel_y",
        "rect_x0", "rect_x1", "rect_y0", "rect_y1", "rho0_scale"}}};
  return keys;
}

}  // namespace

const ScenarioDefaults& scenario_defaults(const std::string& scenario) {
  static const std::map<std::string, ScenarioDefaults> defaults{
      {"piper",
       {2.0, 400, 1.93, {0.0, 0.171, 0.543, 0.945, 1.447, 1.930}}},
      {"dogs", {3.0, 600, 0.2, {0.0, 0.044, 0.067, 0.111, 0.156, 0.200}}},
      {"prey", {2.5, 300, 0.5, {0.0, 0.091, 0.267, 0.358, 0.449, 0.491}}}};
  auto it = defaults.find(scenario);
  if (it == defaults.end()) {
    std::ostringstream msg;
    msg << "unknown scenario '" << scenario << "'; valid scenarios:";
    for (const auto& n : scenario_names()) msg << " " << n;
    throw ConfigError(msg.str());
  }
  return it->second;
}

RunConfig parse_config(const std::string& text) {
  // first pass: collect key/value pairs with line numbers
  std::vector<std::tuple<std::string, std::string, int>> entries;
  {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      std::string s = raw;
      if (auto hash = s.find('#'); hash != std::string::npos) s.resize(hash);
      s = trim(s);
      if (s.empty()) continue;
      auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("line " + std::to_string(line) +
                              ": expected 'key = value', got '" + trim(raw) + "'",
                          line);
      }
      entries.emplace_back(trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line);
    }
  }

  // the scenario decides the defaults and the legal override keys
  std::string scenario;
  int scenario_line = 0;
  for (const auto& [key, value, line] : entries) {
    if (key == "scenario") {
      scenario = value;
      scenario_line = line;
    }
  }
  if (scenario.empty()) {
    throw ConfigError("missing required key 'scenario'");
  }
  const ScenarioDefaults& def = [&]() -> const ScenarioDefaults& {
    try {
      return scenario_defaults(scenario);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(scenario_line) + ": " +
                            e.what(),
                        scenario_line);
    }
  }();

  RunConfig cfg;
  cfg.scenario = scenario;
  cfg.t_end = def.t_end;
  cfg.snapshot_times = def.snapshot_times;

  int nx = def.n, ny = def.n;
  bool have_extent = false, have_explicit = false;
  double extent = def.extent;
  double x0 = 0, y0 = 0, dx = 0, dy = 0;
  int explicit_parts = 0;

  const auto& param_keys = scenario_param_keys().at(scenario);
  auto is_param_key = [&](const std::string& key, std::string& bare) {
    auto dot = key.find('.');
    if (dot == std::string::npos || key.substr(0, dot) != scenario) return false;
    bare = key.substr(dot + 1);
    return true;
  };

  for (const auto& [key, value, line] : entries) {
    std::string bare;
    if (key == "scenario") {
      continue;
    } else if (key == "t_end") {
      cfg.t_end = parse_double(value, line);
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = parse_list(value, line);
    } else if (key == "cfl_factor") {
      cfg.cfl_factor = parse_double(value, line);
    } else if (key == "clamp") {
      cfg.clamp = parse_bool(value, line);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else if (key == "formats") {
      cfg.format_csv = false;
      cfg.format_pgm = false;
      std::istringstream in(value);
      std::string item;
      while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item == "csv") {
          cfg.format_csv = true;
        } else if (item == "pgm") {
          cfg.format_pgm = true;
        } else if (!item.empty()) {
          throw ConfigError("line " + std::to_string(line) +
                                ": unknown format '" + item + "' (csv, pgm)",
                            line);
        }
      }
    } else if (key == "grid.extent") {
      extent = parse_double(value, line);
      have_extent = true;
    } else if (key == "grid.nx") {
      nx = static_cast<int>(parse_int(value, line));
    } else if (key == "grid.ny") {
      ny = static_cast<int>(parse_int(value, line));
    } else if (key == "grid.x0" || key == "grid.y0" || key == "grid.dx" ||
               key == "grid.dy") {
      have_explicit = true;
      ++explicit_parts;
      double v = parse_double(value, line);
      if (key == "grid.x0") x0 = v;
      if (key == "grid.y0") y0 = v;
      if (key == "grid.dx") dx = v;
      if (key == "grid.dy") dy = v;
    } else if (key == "optimizer.budget") {
      cfg.opt_budget = static_cast<int>(parse_int(value, line));
    } else if (key == "optimizer.nodes") {
      cfg.opt_nodes = static_cast<int>(parse_int(value, line));
    } else if (key == "optimizer.seed") {
      cfg.opt_seed = static_cast<std::uint64_t>(parse_int(value, line));
    } else if (key == "optimizer.t_max") {
      cfg.opt_t_max = parse_double(value, line);
    } else if (key == "optimizer.nx") {
      cfg.opt_nx = static_cast<int>(parse_int(value, line));
    } else if (key == "optimizer.k_rect") {
      auto list = parse_list(value, line);
      if (list.size() != 4) {
        throw ConfigError("line " + std::to_string(line) +
                              ": optimizer.k_rect expects x0, y0, x1, y1",
                          line);
      }
      cfg.opt_k_set = true;
      cfg.opt_k_x0 = list[0];
      cfg.opt_k_y0 = list[1];
      cfg.opt_k_x1 = list[2];
      cfg.opt_k_y1 = list[3];
    } else if (is_param_key(key, bare)) {
      if (std::find(param_keys.begin(), param_keys.end(), bare) ==
          param_keys.end()) {
        throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                              key + "'",
                          line);
      }
      cfg.overrides[bare] = parse_list(value, line);
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                            key + "'",
                        line);
    }
  }

  if (have_extent && have_explicit) {
    throw ConfigError(
        "grid.extent conflicts with explicit grid.x0/y0/dx/dy keys");
  }
  if (have_explicit && explicit_parts != 4) {
    throw ConfigError("explicit grids need all of grid.x0, grid.y0, grid.dx, grid.dy");
  }
  if (have_explicit) {
    cfg.grid = GridSpec{x0, y0, nx, ny, dx, dy};
  } else {
    cfg.grid = GridSpec{-extent, -extent, nx, ny, 2.0 * extent / nx,
                        2.0 * extent / ny};
  }
  cfg.grid.validate();

  // validate the override values eagerly so errors carry context
  (void)build_model(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "scenario = " << cfg.scenario << "\n";
  out << "grid.nx = " << cfg.grid.nx << "\n";
  out << "grid.ny = " << cfg.grid.ny << "\n";
  out << "grid.x0 = " << fmt(cfg.grid.x0) << "\n";
  out << "grid.y0 = " << fmt(cfg.grid.y0) << "\n";
  out << "grid.dx = " << fmt(cfg.grid.dx) << "\n";
  out << "grid.dy = " << fmt(cfg.grid.dy) << "\n";
  out << "t_end = " << fmt(cfg.t_end) << "\n";
  out << "snapshot_times =";
  for (std::size_t i = 0; i < cfg.snapshot_times.size(); ++i) {
    out << (i ? ", " : " ") << fmt(cfg.snapshot_times[i]);
  }
  out << "\n";
  out << "cfl_factor = " << fmt(cfg.cfl_factor) << "\n";
  out << "clamp = " << (cfg.clamp ? "true" : "false") << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  out << "formats = ";
  if (cfg.format_csv) out << "csv";
  if (cfg.format_csv && cfg.format_pgm) out << ",";
  if (cfg.format_pgm) out << "pgm";
  out << "\n";
  for (const auto& [key, values] : cfg.overrides) {
    out << cfg.scenario << "." << key << " =";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << (i ? ", " : " ") << fmt(values[i]);
    }
    out << "\n";
  }
  out << "optimizer.budget = " << cfg.opt_budget << "\n";
  out << "optimizer.nodes = " << cfg.opt_nodes << "\n";
  out << "optimizer.seed = " << cfg.opt_seed << "\n";
  out << "optimizer.t_max = " << fmt(cfg.opt_t_max) << "\n";
  out << "optimizer.nx = " << cfg.opt_nx << "\n";
  if (cfg.opt_k_set) {
    out << "optimizer.k_rect = " << fmt(cfg.opt_k_x0) << ", "
        << fmt(cfg.opt_k_y0) << ", " << fmt(cfg.opt_k_x1) << ", "
        << fmt(cfg.opt_k_y1) << "\n";
  }
  return out.str();
}

std::unique_ptr<ScenarioModel> build_model(const RunConfig& config) {
  return make_scenario(config.scenario, config.overrides);
}

}  // namespace herdsim
