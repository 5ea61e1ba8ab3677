#pragma once

#include <string>
#include <vector>

#include "herdsim/grid.hpp"
#include "herdsim/pde.hpp"
#include "herdsim/scenario.hpp"

namespace herdsim {

struct Trajectory;  // engine.hpp

struct StepStats {
  double t = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double mass = 0.0;
  double agent_norm = 0.0;
};

struct SnapshotStats {
  double t = 0.0;
  long step_index = 0;
  double tv = 0.0;
  double tv_bound = 0.0;
  double support_radius = 0.0;
  double support_bound = 0.0;
  double agent_norm = 0.0;
  double agent_bound = 0.0;
  int components = 0;
};

/// Per-run record of the quantities the analytic guarantees bound.
struct DiagnosticsReport {
  std::vector<StepStats> steps;
  std::vector<SnapshotStats> snapshots;
  double mass_initial = 0.0;
  double tv_initial = 0.0;
  double initial_support_radius = 0.0;
  double support_threshold = 0.0;
  double clipped_mass = 0.0;
  double c_phi = 0.0;
  double v_cfl = 0.0;
  double max_cell_size = 0.0;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double limit = 0.0;
};

/// Growth bound on the total variation at time t, from the initial TV and the
/// model's recorded flux constants:
///   (tv0 + Nx W_Nx t Cdiv) exp((2 Nx + 1) Cgrad t)
/// with Nx = 2, W_2 = pi/4, Cgrad = tv_flux_gradient_sup and
/// Cdiv = tv_divergence_integral. Monotone nondecreasing in t.
double tv_bound(const ScenarioModel& model, double tv_initial, double t);

/// Verifies the recorded run against the analytic guarantees: density range,
/// mass conservation, TV versus tv_bound, support spread versus the numerical
/// one-cell-per-sweep speed, and the agent-norm growth bound. Returns one
/// result per check; never throws on failure.
std::vector<CheckResult> check_run(const Trajectory& trajectory,
                                   const ScenarioModel& model);

struct StabilityRow {
  double delta = 0.0;
  double l1_drift = 0.0;
  double agent_drift = 0.0;
  double l1_ratio = 0.0;     // l1_drift / delta
  double agent_ratio = 0.0;  // agent_drift / delta
};

struct StabilityTable {
  std::vector<StabilityRow> rows;
  /// Set when the drift-to-delta ratio varies by more than a factor 2
  /// between consecutive deltas (super-linear or erratic dependence).
  bool flagged = false;
  std::string flag_reason;
};

/// Perturbation-scaling probe: for each delta, reruns the scenario with the
/// initial density scaled by (1 - delta) and reports the final L1 and agent
/// drifts and their ratios to delta.
StabilityTable stability_report(const ScenarioModel& model, const GridSpec& grid,
                                const SolverConfig& config, double t_end,
                                std::span<const double> deltas);

}  // namespace herdsim
