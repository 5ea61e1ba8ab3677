#pragma once

#include <span>

#include "herdsim/grid.hpp"
#include "herdsim/scenario.hpp"

namespace herdsim {

enum class Axis { x, y };

struct SolverConfig {
  /// Fraction of the stability limit used for the time step; values above 1
  /// deliberately violate stability (the diagnostics can probe that).
  double cfl_factor = 0.9;
  /// Clip the density to [0, rho_max] after each step and record the
  /// clipped mass. Off by default so conservation stays exact.
  bool clamp_to_range = false;

  bool operator==(const SolverConfig&) const = default;
};

/// Stable step size: cfl_factor * min(dx, dy) / v_cfl. Throws on a
/// nonpositive or nonfinite v_cfl.
double cfl_dt(const ScenarioModel& model, const GridSpec& grid,
              const SolverConfig& config);

/// One Lax-Friedrichs sweep along the given axis with the agent state
/// frozen: rho_i' = (rho_{i-1} + rho_{i+1})/2 - dt/(2h) (F_{i+1} - F_{i-1}),
/// where F is the axis component of the flux at each cell's own center and
/// ghost cells carry rho = 0 (hence F = 0). Throws CflError when dt exceeds
/// the step the config permits for this axis.
DensityField lxf_sweep(const DensityField& field, const ScenarioModel& model,
                       double t, std::span<const double> p, double dt, Axis axis,
                       const SolverConfig& config);

/// One full step by first-order splitting: two sweeps of full dt each,
/// X-then-Y on even step_index and Y-then-X on odd. With clamping enabled the
/// mass removed by clipping is added to *clipped_mass.
DensityField pde_step(const DensityField& field, const ScenarioModel& model,
                      double t, std::span<const double> p, double dt,
                      long step_index, const SolverConfig& config,
                      double* clipped_mass = nullptr);

}  // namespace herdsim
