#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "herdsim/scenario.hpp"

namespace herdsim {

/// Lured-crowd scenario: a single walker attracts the density while moving
/// on a prescribed unit-speed direction profile, faster when the averaged
/// density around it is higher.
struct PiperParams {
  double v_max = 9.0;
  double rho_max = 1.0;
  double speed_max = 7.0;  // walker speed at averaged density rho_max
  double speed_min = 1.0;  // walker speed at vacuum
  double omega = 1.0;      // angular rate of the default direction profile
  double kernel_radius = 0.15;
  Vec2 start{-1.0, 0.5};
  double rect_x0 = -0.5, rect_x1 = 0.0, rect_y0 = 0.35, rect_y1 = 0.85;
  double rho0_scale = 1.0;
};

/// Herding scenario: n drivers repel the density while circling it, moving
/// orthogonally to the averaged density gradient.
struct DogsParams {
  double v_max = 1.0;
  double rho_max = 1.0;
  double alpha = 20.0;  // repulsion strength
  double ell = 0.2;     // squared repulsion range
  double beta = 1.0;    // radial dispersal strength
  double kernel_radius = 1.0;
  double dog_speed = 100.0;
  std::vector<Vec2> starts{{0.7, 0.0}, {-0.7, 0.0}};
  Vec2 disc_center{0.0, 0.0};
  double disc_radius = 0.2;
  double rho0_scale = 1.0;
};

/// Pursuit scenario: a second-order agent (position and velocity) accelerates
/// along the averaged density gradient; the density drifts with a background
/// velocity and flees the agent.
struct PreyParams {
  double v_max = 2.0;
  double rho_max = 1.0;
  double escape_rate = 40.0;   // B
  double escape_range = 5.25;  // C; repulsion decays like exp(-C |x-P|)
  Vec2 drift{0.0, -0.5};       // background velocity V0
  double accel_gain = 400.0;
  double kernel_radius = 0.5;
  Vec2 start{0.0, -0.8};
  Vec2 start_velocity{0.0, 1.0};
  double rect_x0 = -0.2, rect_x1 = 0.2, rect_y0 = -0.2, rect_y1 = -0.1;
  double rho0_scale = 1.0;
};

/// Direction profile for the piper; |psi| <= 1 is required for the recorded
/// speed bounds to hold.
using DirectionProfile = std::function<Vec2(double)>;

std::unique_ptr<ScenarioModel> make_piper(const PiperParams& params,
                                          DirectionProfile psi = {});
std::unique_ptr<ScenarioModel> make_dogs(const DogsParams& params);
std::unique_ptr<ScenarioModel> make_prey(const PreyParams& params);

/// Scalar and list-valued parameter overrides keyed by the names documented
/// in the README ("v_max", "start", ...). Unknown keys throw ConfigError.
using ParamOverrides = std::map<std::string, std::vector<double>>;

PiperParams piper_params(const ParamOverrides& overrides = {});
DogsParams dogs_params(const ParamOverrides& overrides = {});
PreyParams prey_params(const ParamOverrides& overrides = {});

/// Scenario by name: "piper", "dogs" or "prey"; throws ConfigError with the
/// list of valid names otherwise.
std::unique_ptr<ScenarioModel> make_scenario(const std::string& name,
                                             const ParamOverrides& overrides = {});

const std::vector<std::string>& scenario_names();

/// Cell-averaged initial density: value = rho_max * scale * (fraction of the
/// cell inside the shape), by 4x4 subsampling. Throws DomainTooSmallError if
/// the shape does not fit inside the grid with a margin of kernel_radius
/// plus two cells.
DensityField initial_density(const ScenarioModel& model, const GridSpec& grid);

}  // namespace herdsim
