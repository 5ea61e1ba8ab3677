#include "herdsim/ode.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "herdsim/errors.hpp"

namespace herdsim {

std::vector<Vec2> agent_positions(std::span<const double> p,
                                  const ScenarioModel& model) {
  if (static_cast<int>(p.size()) != model.state_dim()) {
    std::ostringstream msg;
    msg << "agent state has dimension " << p.size() << ", model '"
        << model.name() << "' expects " << model.state_dim();
    throw std::invalid_argument(msg.str());
  }
  return model.sample_points(p);
}

std::vector<double> ode_step(std::span<const double> p, const ScenarioModel& model,
                             const DensityField& field,
                             const MollifierKernel& kernel, double t, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ode_step: dt must be positive");
  }
  const std::vector<Vec2> pts = agent_positions(p, model);
  const std::vector<double> r =
      stack_at(field, kernel, pts, model.averaging_mode());
  const std::vector<double> phi = model.agent_velocity(t, p, r);

  for (double v : phi) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "nonfinite agent speed at t=" << t << "; state p=(";
      for (std::size_t i = 0; i < p.size(); ++i) {
        msg << (i ? ", " : "") << p[i];
      }
      msg << "), averaged input r=(";
      for (std::size_t i = 0; i < r.size(); ++i) {
        msg << (i ? ", " : "") << r[i];
      }
      msg << ")";
      throw NonFiniteError(msg.str());
    }
  }

  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] + dt * phi[i];
  return out;
}

}  // namespace herdsim
