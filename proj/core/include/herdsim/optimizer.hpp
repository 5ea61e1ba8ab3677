#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "herdsim/models.hpp"
#include "herdsim/pde.hpp"

namespace herdsim {

/// A walker route: a start position plus direction nodes psi_k at uniform
/// times k * node_dt, interpolated piecewise-linearly and clamped beyond the
/// last node. Feasible routes have |psi_k| <= 1, node increments bounded by
/// node_dt (unit derivative bound) and the start inside the target region.
struct RouteParam {
  Vec2 start{0.0, 0.0};
  std::vector<Vec2> nodes;
  double node_dt = 0.0;

  Vec2 psi(double t) const;
  DirectionProfile interpolant() const;
};

/// Target region K (axis-aligned) and horizon for the evacuation objective.
struct ObjectiveSpec {
  double k_x0 = 0.0, k_y0 = 0.0, k_x1 = 0.0, k_y1 = 0.0;
  double t_max = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= k_x0 && p.x <= k_x1 && p.y >= k_y0 && p.y <= k_y1;
  }

  /// K defaults to the initial-support bounding rectangle expanded by 0.25
  /// on each side.
  static ObjectiveSpec for_piper(const PiperParams& params, double t_max);
};

/// Route sampling the rotating unit direction profile (cos wt, -sin wt) at
/// the node times; the default walker behavior expressed as a route.
RouteParam circular_route(const PiperParams& params, Vec2 start, int n_nodes,
                          double t_max);

bool is_feasible(const RouteParam& route, const ObjectiveSpec& spec,
                 double tol = 1e-12);

/// Projection onto the feasible set: clip node norms to 1, forward-backward
/// slope limiting to the node-increment bound, clamp the start into K.
/// Idempotent on feasible routes.
RouteParam project(RouteParam route, const ObjectiveSpec& spec);

/// Mass remaining in K at t_max when the walker follows the route. Engine
/// aborts (margin, CFL, nonfinite) surface as +infinity.
double objective(const RouteParam& route, const ObjectiveSpec& spec,
                 const PiperParams& params, const GridSpec& grid,
                 const SolverConfig& config);

struct OptimizeResult {
  RouteParam best;
  double best_value = 0.0;
  /// best-so-far after each objective evaluation; nonincreasing, length =
  /// evaluation budget
  std::vector<double> history;
};

/// Derivative-free search (Nelder-Mead with feasibility projection on every
/// proposal, multistart from the projected circular route plus seeded random
/// feasible routes). Deterministic for a fixed seed and budget; each engine
/// evaluation counts against the budget.
OptimizeResult optimize(const ObjectiveSpec& spec, const PiperParams& params,
                        const GridSpec& grid, const SolverConfig& config,
                        int budget, std::uint64_t seed, int n_nodes = 8);

}  // namespace herdsim
