#pragma once

#include <span>
#include <string>
#include <vector>

#include "herdsim/averaging.hpp"
#include "herdsim/grid.hpp"
#include "herdsim/vec2.hpp"

namespace herdsim {

/// Description of the initial density: a shape filled at rho_max times scale.
struct InitialDensity {
  enum class Shape { none, rectangle, disc };

  Shape shape = Shape::none;
  double rect_x0 = 0.0, rect_x1 = 0.0, rect_y0 = 0.0, rect_y1 = 0.0;
  Vec2 disc_center{0.0, 0.0};
  double disc_radius = 0.0;
  double scale = 1.0;

  /// Exact integral of the described density with peak value rho_max*scale.
  double analytic_mass(double rho_max) const;
  /// Bounding box of the support, as {x0, y0, x1, y1}; zero box for none.
  std::array<double, 4> bounding_box() const;
};

/// A coupled model: flux law for the continuum, speed law for the agents,
/// averaging mode tying them together, and initial data.
///
/// The flux has the congestion form f(t,x,rho,p) = rho v(rho) W(t,x,p) with
/// v(rho) = v_max (1 - rho/rho_max), so it vanishes identically at rho = 0
/// and rho = rho_max. Derived classes supply the drift field W, the agent
/// speed law, and the positions at which the density is averaged.
class ScenarioModel {
 public:
  virtual ~ScenarioModel() = default;

  const std::string& name() const { return name_; }
  double rho_max() const { return rho_max_; }
  double v_max() const { return v_max_; }
  int state_dim() const { return state_dim_; }
  AveragingMode averaging_mode() const { return mode_; }
  double kernel_radius() const { return kernel_radius_; }
  const std::vector<double>& initial_agent_state() const { return p0_; }
  const InitialDensity& initial_density_spec() const { return rho0_; }

  /// Upper bound on |d/drho f . e| per axis direction e, over the full
  /// parameter ranges; governs the CFL time step.
  double v_cfl() const { return v_cfl_; }

  /// Sublinearity constant: |phi(t,p,r)| <= c_phi (1 + |p|) for admissible r.
  double c_phi() const { return c_phi_; }

  /// sup |grad_x d/drho f| over rho in [0, rho_max], all x, admissible p.
  double tv_flux_gradient_sup() const { return tv_flux_gradient_sup_; }

  /// integral over the plane of sup_{rho,p} |grad_x div_x f|.
  double tv_divergence_integral() const { return tv_divergence_integral_; }

  /// rho v(rho) = v_max rho (1 - rho/rho_max); exactly zero at both ends.
  double congestion_flux(double rho) const {
    return v_max_ * rho * (1.0 - rho / rho_max_);
  }

  Vec2 flux(double t, Vec2 x, double rho, std::span<const double> p) const {
    return congestion_flux(rho) * drift_field(t, x, p);
  }

  /// The spatial vector field W multiplying rho v(rho) in the flux.
  virtual Vec2 drift_field(double t, Vec2 x, std::span<const double> p) const = 0;

  /// Agent speed law phi(t, p, r) where r stacks the averaged density (or
  /// its gradient) at the sample points.
  virtual std::vector<double> agent_velocity(double t, std::span<const double> p,
                                             std::span<const double> r) const = 0;

  /// Positions at which the density is averaged for this agent state.
  virtual std::vector<Vec2> sample_points(std::span<const double> p) const = 0;

 protected:
  std::string name_;
  double rho_max_ = 1.0;
  double v_max_ = 1.0;
  int state_dim_ = 2;
  AveragingMode mode_ = AveragingMode::value;
  double kernel_radius_ = 1.0;
  std::vector<double> p0_;
  InitialDensity rho0_;
  double v_cfl_ = 0.0;
  double c_phi_ = 0.0;
  double tv_flux_gradient_sup_ = 0.0;
  double tv_divergence_integral_ = 0.0;
};

/// Largest |d/drho f . e| found by central finite differences on `samples`
/// random admissible inputs. The engine asserts this stays below v_cfl().
double sampled_flux_slope(const ScenarioModel& model, unsigned long long seed,
                          int samples);

}  // namespace herdsim
