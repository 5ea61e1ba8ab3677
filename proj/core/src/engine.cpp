#include "herdsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "herdsim/errors.hpp"
#include "herdsim/models.hpp"
#include "herdsim/ode.hpp"

namespace herdsim {

namespace {

StepStats collect_step_stats(double t, const DensityField& field,
                             std::span<const double> p) {
  StepStats s;
  s.t = t;
  double lo = field.values().front();
  double hi = lo;
  double sum = 0.0;
  for (double v : field.values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  s.rho_min = lo;
  s.rho_max = hi;
  s.mass = sum * field.grid().cell_area();
  double n2 = 0.0;
  for (double v : p) n2 += v * v;
  s.agent_norm = std::sqrt(n2);
  if (!std::isfinite(hi) || !std::isfinite(lo) || !std::isfinite(s.agent_norm)) {
    std::ostringstream msg;
    msg << "nonfinite state at t=" << t << " (rho range [" << lo << ", " << hi
        << "], agent norm " << s.agent_norm << ")";
    throw NonFiniteError(msg.str());
  }
  return s;
}

SnapshotStats collect_snapshot_stats(double t, long step_index,
                                     const DensityField& field,
                                     std::span<const double> p,
                                     const ScenarioModel& model,
                                     const DiagnosticsReport& report) {
  SnapshotStats s;
  s.t = t;
  s.step_index = step_index;
  s.tv = total_variation(field);
  s.tv_bound = tv_bound(model, report.tv_initial, t);
  s.support_radius = support_radius(field, report.support_threshold);
  // the scheme spreads one cell per sweep; three cells of slack for the
  // subcell position of the initial edge
  s.support_bound = report.initial_support_radius +
                    (step_index + 3) * report.max_cell_size;
  double n2 = 0.0;
  for (double v : p) n2 += v * v;
  s.agent_norm = std::sqrt(n2);
  double p0_norm = report.steps.empty() ? 0.0 : report.steps.front().agent_norm;
  s.agent_bound = (p0_norm + 1.0) * std::exp(model.c_phi() * t) - 1.0;
  s.components = connected_components(field, 0.01 * model.rho_max());
  return s;
}

void check_margin(const DensityField& field, const ScenarioModel& model,
                  double t, double threshold) {
  const GridSpec& g = field.grid();
  const double required =
      model.kernel_radius() + 2.0 * std::max(g.dx, g.dy);
  const double gap = support_boundary_gap(field, threshold);
  if (gap < required) {
    std::ostringstream msg;
    msg << "density support reached within " << gap
        << " of the domain boundary at t=" << t << " (required margin "
        << required << "); enlarge the domain";
    throw MarginError(msg.str(), t);
  }
}

}  // namespace

Trajectory run(const ScenarioModel& model, const GridSpec& grid,
               const SolverConfig& config, double t_end,
               std::span<const double> snapshot_times,
               const DensityField* initial_override) {
  grid.validate();
  if (!(t_end >= 0.0)) {
    throw std::invalid_argument("run: t_end must be nonnegative");
  }

  // cheap self-check of the recorded flux-slope bound before committing to
  // a long run with an unstable step
  const double sampled = sampled_flux_slope(model, 12345, 200);
  if (sampled > model.v_cfl() * (1.0 + 1e-6)) {
    std::ostringstream msg;
    msg << "model '" << model.name() << "' reports v_cfl=" << model.v_cfl()
        << " but sampled flux slope " << sampled << " exceeds it";
    throw std::logic_error(msg.str());
  }

  Trajectory traj;
  DensityField field = initial_override
                           ? *initial_override
                           : initial_density(model, grid);
  if (!(field.grid() == grid)) {
    throw std::invalid_argument("run: initial field lives on a different grid");
  }

  const MollifierKernel kernel(model.kernel_radius());
  std::vector<double> p = model.initial_agent_state();
  double t = 0.0;
  long step_index = 0;

  DiagnosticsReport& report = traj.report;
  report.support_threshold = default_support_threshold(model.rho_max());
  report.mass_initial = mass(field);
  report.tv_initial = total_variation(field);
  report.initial_support_radius =
      support_radius(field, report.support_threshold);
  report.c_phi = model.c_phi();
  report.v_cfl = model.v_cfl();
  report.max_cell_size = std::max(grid.dx, grid.dy);

  check_margin(field, model, 0.0, report.support_threshold);
  report.steps.push_back(collect_step_stats(0.0, field, p));
  traj.times.push_back(0.0);
  traj.agent_states.push_back(p);

  // requested times in (0, t_end], deduplicated, plus t_end itself
  std::vector<double> targets(snapshot_times.begin(), snapshot_times.end());
  targets.push_back(t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::erase_if(targets, [t_end](double s) { return s <= 0.0 || s > t_end; });

  auto want_snapshot = [&snapshot_times](double s) {
    return std::find(snapshot_times.begin(), snapshot_times.end(), s) !=
           snapshot_times.end();
  };

  if (want_snapshot(0.0)) {
    traj.snapshots.emplace_back(0.0, field);
  }
  report.snapshots.push_back(
      collect_snapshot_stats(0.0, 0, field, p, model, report));

  const double dt_cfl = cfl_dt(model, grid, config);
  for (double target : targets) {
    while (t < target) {
      const double remaining = target - t;
      const bool lands = remaining <= dt_cfl;
      const double dt = lands ? remaining : dt_cfl;

      DensityField next = pde_step(field, model, t, p, dt, step_index, config,
                                   &report.clipped_mass);
      std::vector<double> p_next = ode_step(p, model, field, kernel, t, dt);

      field = std::move(next);
      p = std::move(p_next);
      t = lands ? target : t + dt;
      ++step_index;

      check_margin(field, model, t, report.support_threshold);
      report.steps.push_back(collect_step_stats(t, field, p));
      traj.times.push_back(t);
      traj.agent_states.push_back(p);
    }
    report.snapshots.push_back(
        collect_snapshot_stats(t, step_index, field, p, model, report));
    if (want_snapshot(t)) traj.snapshots.emplace_back(t, field);
  }

  traj.final_field = std::move(field);
  return traj;
}

PerturbationCurves run_pair_perturbed(const ScenarioModel& model,
                                      const GridSpec& grid,
                                      const SolverConfig& config, double t_end,
                                      double delta,
                                      std::span<const double> snapshot_times) {
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("run_pair_perturbed: delta must be in [0, 1)");
  }
  DensityField base = initial_density(model, grid);
  DensityField scaled = base;
  for (double& v : scaled.values()) v *= (1.0 - delta);

  std::vector<double> snaps(snapshot_times.begin(), snapshot_times.end());
  if (std::find(snaps.begin(), snaps.end(), t_end) == snaps.end()) {
    snaps.push_back(t_end);
  }

  Trajectory a = run(model, grid, config, t_end, snaps, &base);
  Trajectory b = run(model, grid, config, t_end, snaps, &scaled);
  if (a.snapshots.size() != b.snapshots.size()) {
    throw std::logic_error("perturbed runs recorded different snapshots");
  }

  PerturbationCurves curves;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    curves.times.push_back(a.snapshots[k].first);
    curves.l1_drift.push_back(
        l1_distance(a.snapshots[k].second, b.snapshots[k].second));
  }
  // agent drift at the same instants, looked up in the per-step record
  for (double s : curves.times) {
    auto it = std::find(a.times.begin(), a.times.end(), s);
    std::size_t idx = static_cast<std::size_t>(it - a.times.begin());
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.agent_states[idx].size(); ++i) {
      double d = a.agent_states[idx][i] - b.agent_states[idx][i];
      d2 += d * d;
    }
    curves.agent_drift.push_back(std::sqrt(d2));
  }
  return curves;
}

}  // namespace herdsim
