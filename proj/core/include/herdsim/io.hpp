#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "herdsim/diagnostics.hpp"
#include "herdsim/engine.hpp"
#include "herdsim/grid.hpp"
#include "herdsim/optimizer.hpp"

namespace herdsim {

/// Snapshot CSV: header line `# t=<t> nx=<nx> ny=<ny> x0=<x0> y0=<y0>
/// dx=<dx> dy=<dy>`, then ny rows (y from low to high) of nx comma-separated
/// values with 9 significant digits.
void write_snapshot(const DensityField& field, double t,
                    const std::filesystem::path& path);

/// Reads a snapshot written by write_snapshot; rho_max is not stored in the
/// file and must be supplied.
std::pair<DensityField, double> read_snapshot(const std::filesystem::path& path,
                                              double rho_max = 1.0);

/// Binary 8-bit PGM (P5): gray = round(255 clamp(rho,0,R)/R), top row is the
/// largest y.
void write_pgm(const DensityField& field, const std::filesystem::path& path);

/// Trajectory CSV: header `t,p1,...,pN`, one row per step.
void write_trajectory(const Trajectory& trajectory,
                      const std::filesystem::path& path);

/// Flat `key = value` run report: summary, per-snapshot diagnostics and the
/// check verdicts.
void write_report(const Trajectory& trajectory, const ScenarioModel& model,
                  const std::vector<CheckResult>& checks,
                  const std::filesystem::path& path);

/// Stability table CSV plus a trailing `# flagged` comment when scaling
/// looks non-linear.
void write_stability(const StabilityTable& table,
                     const std::filesystem::path& path);

/// Route CSV: `# start=<x> <y>` comment, header `t,psi_x,psi_y`, one row per
/// node. read_route rejects non-uniform node times.
void write_route(const RouteParam& route, const std::filesystem::path& path);
RouteParam read_route(const std::filesystem::path& path);

/// Best-so-far objective per evaluation: header `eval,best`.
void write_history(const std::vector<double>& history,
                   const std::filesystem::path& path);

}  // namespace herdsim
