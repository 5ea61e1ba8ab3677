#include "herdsim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "herdsim/engine.hpp"
#include "herdsim/errors.hpp"

namespace herdsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> encode(const RouteParam& r) {
  std::vector<double> x;
  x.reserve(2 + 2 * r.nodes.size());
  x.push_back(r.start.x);
  x.push_back(r.start.y);
  for (Vec2 n : r.nodes) {
    x.push_back(n.x);
    x.push_back(n.y);
  }
  return x;
}

RouteParam decode(const std::vector<double>& x, double node_dt) {
  RouteParam r;
  r.start = {x[0], x[1]};
  r.node_dt = node_dt;
  for (std::size_t i = 2; i + 1 < x.size(); i += 2) {
    r.nodes.push_back({x[i], x[i + 1]});
  }
  return r;
}

}  // namespace

Vec2 RouteParam::psi(double t) const {
  if (nodes.empty()) return {0.0, 0.0};
  if (nodes.size() == 1 || !(node_dt > 0.0) || t <= 0.0) return nodes.front();
  double s = t / node_dt;
  auto k = static_cast<std::size_t>(s);
  if (k + 1 >= nodes.size()) return nodes.back();
  double w = s - static_cast<double>(k);
  return (1.0 - w) * nodes[k] + w * nodes[k + 1];
}

DirectionProfile RouteParam::interpolant() const {
  RouteParam copy = *this;
  return [copy](double t) { return copy.psi(t); };
}

ObjectiveSpec ObjectiveSpec::for_piper(const PiperParams& params, double t_max) {
  ObjectiveSpec s;
  s.k_x0 = params.rect_x0 - 0.25;
  s.k_x1 = params.rect_x1 + 0.25;
  s.k_y0 = params.rect_y0 - 0.25;
  s.k_y1 = params.rect_y1 + 0.25;
  s.t_max = t_max;
  return s;
}

RouteParam circular_route(const PiperParams& params, Vec2 start, int n_nodes,
                          double t_max) {
  if (n_nodes < 2) throw std::invalid_argument("circular_route: need >= 2 nodes");
  RouteParam r;
  r.start = start;
  r.node_dt = t_max / (n_nodes - 1);
  for (int k = 0; k < n_nodes; ++k) {
    double t = k * r.node_dt;
    r.nodes.push_back({std::cos(params.omega * t), -std::sin(params.omega * t)});
  }
  return r;
}

bool is_feasible(const RouteParam& route, const ObjectiveSpec& spec,
                 double tol) {
  if (route.start.x < spec.k_x0 - tol || route.start.x > spec.k_x1 + tol ||
      route.start.y < spec.k_y0 - tol || route.start.y > spec.k_y1 + tol) {
    return false;
  }
  for (std::size_t k = 0; k < route.nodes.size(); ++k) {
    if (route.nodes[k].norm() > 1.0 + tol) return false;
    if (k + 1 < route.nodes.size() &&
        (route.nodes[k + 1] - route.nodes[k]).norm() >
            route.node_dt * (1.0 + tol)) {
      return false;
    }
  }
  return true;
}

RouteParam project(RouteParam route, const ObjectiveSpec& spec) {
  for (Vec2& n : route.nodes) {
    double norm = n.norm();
    if (norm > 1.0) n = n / norm;
  }
  const double max_step = route.node_dt;
  auto limit = [max_step](Vec2 anchor, Vec2& moved) {
    Vec2 d = moved - anchor;
    double len = d.norm();
    if (len > max_step) moved = anchor + (max_step / len) * d;
  };
  for (std::size_t k = 0; k + 1 < route.nodes.size(); ++k) {
    limit(route.nodes[k], route.nodes[k + 1]);
  }
  for (std::size_t k = route.nodes.size(); k-- > 1;) {
    limit(route.nodes[k], route.nodes[k - 1]);
  }
  route.start.x = std::clamp(route.start.x, spec.k_x0, spec.k_x1);
  route.start.y = std::clamp(route.start.y, spec.k_y0, spec.k_y1);
  return route;
}

double objective(const RouteParam& route, const ObjectiveSpec& spec,
                 const PiperParams& params, const GridSpec& grid,
                 const SolverConfig& config) {
  PiperParams prm = params;
  prm.start = route.start;
  auto model = make_piper(prm, route.interpolant());
  try {
    Trajectory traj = run(*model, grid, config, spec.t_max, {});
    const DensityField& f = traj.final_field;
    double sum = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (spec.contains(grid.cell_center(i, j))) sum += f(i, j);
      }
    }
    return sum * grid.cell_area();
  } catch (const MarginError&) {
    return kInf;
  } catch (const CflError&) {
    return kInf;
  } catch (const NonFiniteError&) {
    return kInf;
  }
}

OptimizeResult optimize(const ObjectiveSpec& spec, const PiperParams& params,
                        const GridSpec& grid, const SolverConfig& config,
                        int budget, std::uint64_t seed, int n_nodes) {
  if (budget < 1) throw std::invalid_argument("optimize: budget must be >= 1");
  if (n_nodes < 2) throw std::invalid_argument("optimize: need >= 2 nodes");

  const double node_dt = spec.t_max / (n_nodes - 1);
  std::mt19937_64 rng(seed);

  OptimizeResult result;
  result.best_value = kInf;
  int evals_left = budget;

  auto evaluate = [&](const std::vector<double>& x) {
    RouteParam cand = project(decode(x, node_dt), spec);
    double v = objective(cand, spec, params, grid, config);
    --evals_left;
    if (v < result.best_value || result.history.empty()) {
      result.best_value = std::min(v, result.best_value);
      result.best = cand;
    }
    result.history.push_back(result.best_value);
    return v;
  };

  auto random_route = [&]() {
    RouteParam r;
    r.node_dt = node_dt;
    r.start = {spec.k_x0 + uniform01(rng) * (spec.k_x1 - spec.k_x0),
               spec.k_y0 + uniform01(rng) * (spec.k_y1 - spec.k_y0)};
    Vec2 prev{0.0, 0.0};
    for (int k = 0; k < n_nodes; ++k) {
      Vec2 step{(uniform01(rng) * 2.0 - 1.0) * node_dt,
                (uniform01(rng) * 2.0 - 1.0) * node_dt};
      prev += step;
      r.nodes.push_back(prev);
    }
    return project(std::move(r), spec);
  };

  // Nelder-Mead coefficients
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;
  const std::size_t dim = 2 + 2 * static_cast<std::size_t>(n_nodes);

  bool first_start = true;
  while (evals_left > 0) {
    RouteParam start_route =
        first_start
            ? project(circular_route(params, params.start, n_nodes, spec.t_max),
                      spec)
            : random_route();
    first_start = false;

    std::vector<std::vector<double>> xs;
    std::vector<double> fs;
    std::vector<double> x0 = encode(start_route);
    xs.push_back(x0);
    fs.push_back(evaluate(x0));
    if (evals_left <= 0) break;

    for (std::size_t d = 0; d < dim && evals_left > 0; ++d) {
      std::vector<double> x = x0;
      x[d] += (d < 2) ? 0.1 : 0.25;
      xs.push_back(x);
      fs.push_back(evaluate(x));
    }
    if (xs.size() < dim + 1) break;  // budget ran out mid-simplex

    auto order = [&]() {
      std::vector<std::size_t> idx(xs.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::stable_sort(idx.begin(), idx.end(),
                       [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
      std::vector<std::vector<double>> xs2;
      std::vector<double> fs2;
      for (std::size_t i : idx) {
        xs2.push_back(xs[i]);
        fs2.push_back(fs[i]);
      }
      xs.swap(xs2);
      fs.swap(fs2);
    };

    int stale = 0;
    while (evals_left > 0) {
      order();
      if (std::isfinite(fs[0]) && std::isfinite(fs[dim]) &&
          fs[dim] - fs[0] < 1e-12 * std::max(1.0, std::abs(fs[0]))) {
        break;  // simplex collapsed; restart
      }
      if (stale > 3 * static_cast<int>(dim)) break;

      std::vector<double> centroid(x0.size(), 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t d = 0; d < centroid.size(); ++d) centroid[d] += xs[i][d];
      }
      for (double& c : centroid) c /= static_cast<double>(dim);

      auto blend = [&](double coeff) {
        std::vector<double> x(centroid.size());
        for (std::size_t d = 0; d < x.size(); ++d) {
          x[d] = centroid[d] + coeff * (centroid[d] - xs[dim][d]);
        }
        return x;
      };

      std::vector<double> xr = blend(alpha);
      double fr = evaluate(xr);
      double f_prev_best = fs[0];
      if (fr < fs[0] && evals_left > 0) {
        std::vector<double> xe = blend(alpha * gamma);
        double fe = evaluate(xe);
        if (fe < fr) {
          xs[dim] = xe;
          fs[dim] = fe;
        } else {
          xs[dim] = xr;
          fs[dim] = fr;
        }
      } else if (fr < fs[dim - 1]) {
        xs[dim] = xr;
        fs[dim] = fr;
      } else if (evals_left > 0) {
        bool outside = fr < fs[dim];
        std::vector<double> xc = blend(outside ? alpha * beta : -beta);
        double fc = evaluate(xc);
        if (fc < std::min(fr, fs[dim])) {
          xs[dim] = xc;
          fs[dim] = fc;
        } else {
          // shrink toward the best vertex
          for (std::size_t i = 1; i <= dim && evals_left > 0; ++i) {
            for (std::size_t d = 0; d < xs[i].size(); ++d) {
              xs[i][d] = xs[0][d] + sigma * (xs[i][d] - xs[0][d]);
            }
            fs[i] = evaluate(xs[i]);
          }
        }
      }
      stale = (fs[0] < f_prev_best) ? 0 : stale + 1;
    }
  }

  if (!std::isfinite(result.best_value) && result.history.empty()) {
    throw std::logic_error("optimize: no evaluation performed");
  }
  return result;
}

}  // namespace herdsim
