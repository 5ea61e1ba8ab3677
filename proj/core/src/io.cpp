#include "herdsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "herdsim/errors.hpp"

namespace herdsim {

namespace {

std::string g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

void write_snapshot(const DensityField& field, double t,
                    const std::filesystem::path& path) {
  const GridSpec& g = field.grid();
  std::ofstream out = open_out(path);
  out << "# t=" << g9(t) << " nx=" << g.nx << " ny=" << g.ny
      << " x0=" << g9(g.x0) << " y0=" << g9(g.y0) << " dx=" << g9(g.dx)
      << " dy=" << g9(g.dy) << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) out << ",";
      out << g9(field(i, j));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::pair<DensityField, double> read_snapshot(const std::filesystem::path& path,
                                              double rho_max) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string header;
  std::getline(in, header);
  GridSpec g;
  double t = 0.0;
  if (std::sscanf(header.c_str(),
                  "# t=%lf nx=%d ny=%d x0=%lf y0=%lf dx=%lf dy=%lf", &t, &g.nx,
                  &g.ny, &g.x0, &g.y0, &g.dx, &g.dy) != 7) {
    throw std::runtime_error("malformed snapshot header in '" + path.string() +
                             "'");
  }
  DensityField field(g, rho_max);
  std::string line;
  for (int j = 0; j < g.ny; ++j) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("snapshot '" + path.string() + "' truncated");
    }
    std::istringstream row(line);
    std::string cell;
    for (int i = 0; i < g.nx; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("snapshot '" + path.string() + "' truncated");
      }
      field(i, j) = std::stod(cell);
    }
  }
  return {std::move(field), t};
}

void write_pgm(const DensityField& field, const std::filesystem::path& path) {
  const GridSpec& g = field.grid();
  std::ofstream out = open_out(path, true);
  out << "P5\n" << g.nx << " " << g.ny << "\n255\n";
  std::vector<unsigned char> row(g.nx);
  const double R = field.rho_max();
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      double v = std::min(std::max(field(i, j), 0.0), R);
      row[i] = static_cast<unsigned char>(std::lround(255.0 * v / R));
    }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_trajectory(const Trajectory& trajectory,
                      const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  const std::size_t dim =
      trajectory.agent_states.empty() ? 0 : trajectory.agent_states[0].size();
  out << "t";
  for (std::size_t i = 1; i <= dim; ++i) out << ",p" << i;
  out << "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << g9(trajectory.times[k]);
    for (double v : trajectory.agent_states[k]) out << "," << g9(v);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_report(const Trajectory& trajectory, const ScenarioModel& model,
                  const std::vector<CheckResult>& checks,
                  const std::filesystem::path& path) {
  const DiagnosticsReport& rep = trajectory.report;
  std::ofstream out = open_out(path);
  out << "scenario = " << model.name() << "\n";
  out << "steps = " << (trajectory.times.size() - 1) << "\n";
  out << "t_final = " << g9(trajectory.times.back()) << "\n";
  out << "mass_initial = " << g9(rep.mass_initial) << "\n";
  if (!rep.steps.empty()) {
    double drift = 0.0, lo = 0.0, hi = 0.0;
    for (const StepStats& s : rep.steps) {
      drift = std::max(drift, std::abs(s.mass - rep.mass_initial));
      lo = std::min(lo, s.rho_min);
      hi = std::max(hi, s.rho_max);
    }
    out << "mass_final = " << g9(rep.steps.back().mass) << "\n";
    out << "mass_drift_abs = " << g9(drift) << "\n";
    out << "rho_min = " << g9(lo) << "\n";
    out << "rho_max = " << g9(hi) << "\n";
  }
  out << "clipped_mass = " << g9(rep.clipped_mass) << "\n";
  out << "v_cfl = " << g9(rep.v_cfl) << "\n";
  out << "c_phi = " << g9(rep.c_phi) << "\n";
  out << "support_threshold = " << g9(rep.support_threshold) << "\n";
  out << "agent_final =";
  for (double v : trajectory.final_agent_state()) out << " " << g9(v);
  out << "\n";
  for (std::size_t k = 0; k < rep.snapshots.size(); ++k) {
    const SnapshotStats& s = rep.snapshots[k];
    const std::string pre = "snapshot." + std::to_string(k) + ".";
    out << pre << "t = " << g9(s.t) << "\n";
    out << pre << "step = " << s.step_index << "\n";
    out << pre << "tv = " << g9(s.tv) << "\n";
    out << pre << "tv_bound = " << g9(s.tv_bound) << "\n";
    out << pre << "support_radius = " << g9(s.support_radius) << "\n";
    out << pre << "support_bound = " << g9(s.support_bound) << "\n";
    out << pre << "agent_norm = " << g9(s.agent_norm) << "\n";
    out << pre << "agent_bound = " << g9(s.agent_bound) << "\n";
    out << pre << "components = " << s.components << "\n";
  }
  for (const CheckResult& c : checks) {
    out << "check." << c.name << " = " << (c.pass ? "pass" : "fail") << "\n";
    out << "check." << c.name << ".measured = " << g9(c.measured) << "\n";
    out << "check." << c.name << ".limit = " << g9(c.limit) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_stability(const StabilityTable& table,
                     const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "delta,l1_drift,l1_ratio,agent_drift,agent_ratio\n";
  for (const StabilityRow& r : table.rows) {
    out << g9(r.delta) << "," << g9(r.l1_drift) << "," << g9(r.l1_ratio) << ","
        << g9(r.agent_drift) << "," << g9(r.agent_ratio) << "\n";
  }
  if (table.flagged) out << "# flagged: " << table.flag_reason << "\n";
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_route(const RouteParam& route, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# start=" << g9(route.start.x) << " " << g9(route.start.y) << "\n";
  out << "t,psi_x,psi_y\n";
  for (std::size_t k = 0; k < route.nodes.size(); ++k) {
    out << g9(k * route.node_dt) << "," << g9(route.nodes[k].x) << ","
        << g9(route.nodes[k].y) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

RouteParam read_route(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  RouteParam route;
  std::string line;
  std::getline(in, line);
  if (std::sscanf(line.c_str(), "# start=%lf %lf", &route.start.x,
                  &route.start.y) != 2) {
    throw std::runtime_error("malformed route header in '" + path.string() + "'");
  }
  std::getline(in, line);  // column header
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, x, y;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &y) != 3) {
      throw std::runtime_error("malformed route row '" + line + "'");
    }
    times.push_back(t);
    route.nodes.push_back({x, y});
  }
  if (route.nodes.size() < 2) {
    throw std::runtime_error("route '" + path.string() + "' needs >= 2 nodes");
  }
  route.node_dt = times[1] - times[0];
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (std::abs(times[k + 1] - times[k] - route.node_dt) >
        1e-9 * std::max(1.0, route.node_dt)) {
      throw std::runtime_error("route '" + path.string() +
                               "' has non-uniform node times");
    }
  }
  return route;
}

void write_history(const std::vector<double>& history,
                   const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "eval,best\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << (i + 1) << "," << g9(history[i]) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace herdsim
