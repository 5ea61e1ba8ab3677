#include "herdsim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "herdsim/engine.hpp"

namespace herdsim {

namespace {
constexpr int kSpaceDim = 2;
// W_2 = integral of cos^2 over [0, pi/2]
constexpr double kW2 = std::numbers::pi / 4.0;
}  // namespace

double tv_bound(const ScenarioModel& model, double tv_initial, double t) {
  const double kappa = (2.0 * kSpaceDim + 1.0) * model.tv_flux_gradient_sup();
  const double additive =
      kSpaceDim * kW2 * t * model.tv_divergence_integral();
  return (tv_initial + additive) * std::exp(kappa * t);
}

std::vector<CheckResult> check_run(const Trajectory& trajectory,
                                   const ScenarioModel& model) {
  const DiagnosticsReport& rep = trajectory.report;
  std::vector<CheckResult> results;
  const double R = model.rho_max();

  {
    CheckResult c;
    c.name = "range";
    double lo = 0.0, hi = 0.0;
    for (const StepStats& s : rep.steps) {
      lo = std::min(lo, s.rho_min);
      hi = std::max(hi, s.rho_max);
    }
    c.measured = std::max(hi - R, -lo);
    c.limit = 1e-6 * R;
    c.pass = lo >= -1e-6 * R && hi <= R * (1.0 + 1e-6);
    results.push_back(c);
  }
  {
    CheckResult c;
    c.name = "mass";
    double drift = 0.0;
    for (const StepStats& s : rep.steps) {
      drift = std::max(drift, std::abs(s.mass - rep.mass_initial));
    }
    if (rep.mass_initial > 0.0) {
      c.measured = drift / rep.mass_initial;
      c.limit = 1e-10;
    } else {
      c.measured = drift;
      c.limit = 1e-14;
    }
    c.pass = c.measured <= c.limit;
    results.push_back(c);
  }
  {
    CheckResult c;
    c.name = "tv_bound";
    c.pass = true;
    for (const SnapshotStats& s : rep.snapshots) {
      double slack = s.tv_bound * (1.0 + 1e-6);
      if (s.tv > slack) {
        c.pass = false;
        c.measured = s.tv;
        c.limit = slack;
      }
    }
    results.push_back(c);
  }
  {
    CheckResult c;
    c.name = "support";
    c.pass = true;
    for (const SnapshotStats& s : rep.snapshots) {
      if (s.support_radius > s.support_bound) {
        c.pass = false;
        c.measured = s.support_radius;
        c.limit = s.support_bound;
      }
    }
    results.push_back(c);
  }
  {
    CheckResult c;
    c.name = "agent_bound";
    c.pass = true;
    const double p0_norm = rep.steps.empty() ? 0.0 : rep.steps.front().agent_norm;
    for (const StepStats& s : rep.steps) {
      double bound = ((p0_norm + 1.0) * std::exp(rep.c_phi * s.t) - 1.0) * 1.05;
      if (s.agent_norm > bound) {
        c.pass = false;
        c.measured = s.agent_norm;
        c.limit = bound;
      }
    }
    results.push_back(c);
  }
  if (rep.clipped_mass > 0.0) {
    CheckResult c;
    c.name = "clipped_mass";
    c.measured = rep.clipped_mass;
    c.limit = 1e-8 * std::max(rep.mass_initial, 1e-300);
    c.pass = c.measured < c.limit;
    results.push_back(c);
  }
  return results;
}

StabilityTable stability_report(const ScenarioModel& model, const GridSpec& grid,
                                const SolverConfig& config, double t_end,
                                std::span<const double> deltas) {
  StabilityTable table;
  const double t_final[] = {t_end};
  for (double delta : deltas) {
    if (delta < 0.0 || delta > 0.1) {
      throw std::invalid_argument("stability_report: deltas must lie in [0, 0.1]");
    }
    PerturbationCurves curves =
        run_pair_perturbed(model, grid, config, t_end, delta, t_final);
    StabilityRow row;
    row.delta = delta;
    row.l1_drift = curves.l1_drift.back();
    row.agent_drift = curves.agent_drift.back();
    row.l1_ratio = delta > 0.0 ? row.l1_drift / delta : 0.0;
    row.agent_ratio = delta > 0.0 ? row.agent_drift / delta : 0.0;
    table.rows.push_back(row);
  }

  auto ratios_inconsistent = [](double a, double b) {
    const double tiny = 1e-14;
    if (a < tiny && b < tiny) return false;
    double lo = std::max(std::min(a, b), tiny);
    double hi = std::max(a, b);
    return hi / lo > 2.0;
  };
  for (std::size_t k = 0; k + 1 < table.rows.size(); ++k) {
    const StabilityRow& r0 = table.rows[k];
    const StabilityRow& r1 = table.rows[k + 1];
    if (r0.delta == 0.0 || r1.delta == 0.0) continue;
    if (ratios_inconsistent(r0.l1_ratio, r1.l1_ratio)) {
      table.flagged = true;
      std::ostringstream msg;
      msg << "L1 drift ratio jumps from " << r0.l1_ratio << " (delta "
          << r0.delta << ") to " << r1.l1_ratio << " (delta " << r1.delta << ")";
      table.flag_reason = msg.str();
    } else if (ratios_inconsistent(r0.agent_ratio, r1.agent_ratio)) {
      table.flagged = true;
      std::ostringstream msg;
      msg << "agent drift ratio jumps from " << r0.agent_ratio << " (delta "
          << r0.delta << ") to " << r1.agent_ratio << " (delta " << r1.delta
          << ")";
      table.flag_reason = msg.str();
    }
  }
  return table;
}

}  // namespace herdsim
