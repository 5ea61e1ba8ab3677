#pragma once

#include <span>
#include <vector>

#include "herdsim/averaging.hpp"
#include "herdsim/grid.hpp"
#include "herdsim/scenario.hpp"

namespace herdsim {

/// One explicit Euler step of the agent state: averages the density (or its
/// gradient) at the model's sample points, evaluates the speed law there and
/// advances p by dt. Throws NonFiniteError with a state dump if the speed law
/// produces NaN or infinity.
std::vector<double> ode_step(std::span<const double> p, const ScenarioModel& model,
                             const DensityField& field,
                             const MollifierKernel& kernel, double t, double dt);

/// The positions at which the density is averaged; dimension-checked wrapper
/// around the model's layout (the whole state for a walker, one position per
/// driver, the position part of a position-velocity pair).
std::vector<Vec2> agent_positions(std::span<const double> p,
                                  const ScenarioModel& model);

}  // namespace herdsim
