#pragma once

#include <span>
#include <utility>
#include <vector>

#include "herdsim/diagnostics.hpp"
#include "herdsim/grid.hpp"
#include "herdsim/pde.hpp"
#include "herdsim/scenario.hpp"

namespace herdsim {

/// Time history of one coupled run: agent states at every step, density
/// snapshots at the requested instants (hit exactly by truncating the step),
/// and the diagnostics record.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> agent_states;
  std::vector<std::pair<double, DensityField>> snapshots;
  DensityField final_field;
  DiagnosticsReport report;

  const std::vector<double>& final_agent_state() const {
    return agent_states.back();
  }
};

/// Runs the coupled loop: dt = min(cfl step, distance to the next requested
/// time); density advances by the split solver, agents by one Euler step
/// using the start-of-step density; stops at t_end. Aborts with MarginError
/// when the density support comes within kernel_radius plus two cells of the
/// boundary, and propagates CFL and nonfinite errors.
///
/// `initial_override` replaces the model's built-in initial density (it must
/// live on `grid`); requested snapshot times outside (0, t_end] are ignored,
/// t = 0 and t = t_end are always recorded.
Trajectory run(const ScenarioModel& model, const GridSpec& grid,
               const SolverConfig& config, double t_end,
               std::span<const double> snapshot_times,
               const DensityField* initial_override = nullptr);

struct PerturbationCurves {
  std::vector<double> times;
  std::vector<double> l1_drift;     // |rho_1(t) - rho_2(t)|_L1
  std::vector<double> agent_drift;  // |p_1(t) - p_2(t)|
};

/// Runs the scenario twice, the second time with the initial density scaled
/// by (1 - delta), and reports the drift between the two solutions at the
/// snapshot times.
PerturbationCurves run_pair_perturbed(const ScenarioModel& model,
                                      const GridSpec& grid,
                                      const SolverConfig& config, double t_end,
                                      double delta,
                                      std::span<const double> snapshot_times);

}  // namespace herdsim
