#include "herdsim/pde.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "herdsim/errors.hpp"

namespace herdsim {

namespace {

void check_cfl(double dt, double h, const ScenarioModel& model,
               const SolverConfig& config) {
  const double allowed = config.cfl_factor * h / model.v_cfl();
  if (!(dt <= allowed * (1.0 + 1e-12))) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the configured limit " << allowed
        << " (cfl_factor " << config.cfl_factor << ", v_cfl " << model.v_cfl()
        << ")";
    throw CflError(msg.str());
  }
}

// Axis component of the drift field on every cell center; the sweep flux is
// then congestion_flux(rho) times this cached value. The agent state and the
// time are frozen for the whole step, so one evaluation per cell suffices.
void fill_drift_component(std::vector<double>& out, const DensityField& field,
                          const ScenarioModel& model, double t,
                          std::span<const double> p, Axis axis) {
  const GridSpec& g = field.grid();
  out.resize(g.cell_count());
  std::size_t k = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i, ++k) {
      Vec2 w = model.drift_field(t, g.cell_center(i, j), p);
      out[k] = (axis == Axis::x) ? w.x : w.y;
    }
  }
}

void fill_drift_both(std::vector<double>& wx, std::vector<double>& wy,
                     const DensityField& field, const ScenarioModel& model,
                     double t, std::span<const double> p) {
  const GridSpec& g = field.grid();
  wx.resize(g.cell_count());
  wy.resize(g.cell_count());
  std::size_t k = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i, ++k) {
      Vec2 w = model.drift_field(t, g.cell_center(i, j), p);
      wx[k] = w.x;
      wy[k] = w.y;
    }
  }
}

void sweep_cached(const DensityField& in, DensityField& out,
                  const ScenarioModel& model, const std::vector<double>& w_axis,
                  double dt, Axis axis) {
  const GridSpec& g = in.grid();
  const int nx = g.nx;
  const int ny = g.ny;
  const auto& rho = in.values();
  auto& res = out.values();

  // numerical flux per cell; zero ghosts mean zero flux outside
  static thread_local std::vector<double> flux;
  flux.resize(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    flux[k] = model.congestion_flux(rho[k]) * w_axis[k];
  }

  if (axis == Axis::x) {
    const double lambda = dt / (2.0 * g.dx);
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * nx;
      for (int i = 0; i < nx; ++i) {
        const double rl = (i > 0) ? rho[row + i - 1] : 0.0;
        const double rr = (i < nx - 1) ? rho[row + i + 1] : 0.0;
        const double fl = (i > 0) ? flux[row + i - 1] : 0.0;
        const double fr = (i < nx - 1) ? flux[row + i + 1] : 0.0;
        res[row + i] = 0.5 * (rl + rr) - lambda * (fr - fl);
      }
    }
  } else {
    const double lambda = dt / (2.0 * g.dy);
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = static_cast<std::size_t>(j) * nx;
      const std::size_t below = row - nx;
      const std::size_t above = row + nx;
      for (int i = 0; i < nx; ++i) {
        const double rb = (j > 0) ? rho[below + i] : 0.0;
        const double ra = (j < ny - 1) ? rho[above + i] : 0.0;
        const double fb = (j > 0) ? flux[below + i] : 0.0;
        const double fa = (j < ny - 1) ? flux[above + i] : 0.0;
        res[row + i] = 0.5 * (rb + ra) - lambda * (fa - fb);
      }
    }
  }
}

}  // namespace

double cfl_dt(const ScenarioModel& model, const GridSpec& grid,
              const SolverConfig& config) {
  const double v = model.v_cfl();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("cfl_dt: v_cfl must be positive and finite");
  }
  return config.cfl_factor * std::min(grid.dx, grid.dy) / v;
}

DensityField lxf_sweep(const DensityField& field, const ScenarioModel& model,
                       double t, std::span<const double> p, double dt, Axis axis,
                       const SolverConfig& config) {
  const GridSpec& g = field.grid();
  check_cfl(dt, axis == Axis::x ? g.dx : g.dy, model, config);
  static thread_local std::vector<double> w_axis;
  fill_drift_component(w_axis, field, model, t, p, axis);
  DensityField out(g, field.rho_max());
  sweep_cached(field, out, model, w_axis, dt, axis);
  return out;
}

DensityField pde_step(const DensityField& field, const ScenarioModel& model,
                      double t, std::span<const double> p, double dt,
                      long step_index, const SolverConfig& config,
                      double* clipped_mass) {
  const GridSpec& g = field.grid();
  check_cfl(dt, g.dx, model, config);
  check_cfl(dt, g.dy, model, config);

  static thread_local std::vector<double> wx, wy;
  fill_drift_both(wx, wy, field, model, t, p);

  DensityField mid(g, field.rho_max());
  DensityField out(g, field.rho_max());
  const bool x_first = (step_index % 2 == 0);
  sweep_cached(field, mid, model, x_first ? wx : wy, dt,
               x_first ? Axis::x : Axis::y);
  sweep_cached(mid, out, model, x_first ? wy : wx, dt,
               x_first ? Axis::y : Axis::x);

  if (config.clamp_to_range) {
    double clipped = 0.0;
    const double R = out.rho_max();
    for (double& v : out.values()) {
      if (v < 0.0) {
        clipped -= v;
        v = 0.0;
      } else if (v > R) {
        clipped += v - R;
        v = R;
      }
    }
    if (clipped_mass) *clipped_mass += clipped * g.cell_area();
  }
  return out;
}

}  // namespace herdsim
