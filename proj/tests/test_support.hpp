#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "herdsim/scenario.hpp"

namespace herdsim::testing {

/// x-independent congestion flux f = rho v_max (1 - rho) * dir with inert
/// agents; both TV-bound constants vanish, so tv_bound stays at TV(rho0).
class UniformDriftModel final : public ScenarioModel {
 public:
  explicit UniformDriftModel(Vec2 dir, double v_max = 1.0) : dir_(dir) {
    name_ = "uniform_drift_test";
    rho_max_ = 1.0;
    v_max_ = v_max;
    state_dim_ = 2;
    mode_ = AveragingMode::value;
    kernel_radius_ = 0.1;
    p0_ = {0.0, 0.0};
    v_cfl_ = v_max * std::max(std::abs(dir.x), std::abs(dir.y));
    c_phi_ = 0.0;
    tv_flux_gradient_sup_ = 0.0;
    tv_divergence_integral_ = 0.0;
  }

  Vec2 drift_field(double, Vec2, std::span<const double>) const override {
    return dir_;
  }
  std::vector<double> agent_velocity(double, std::span<const double>,
                                     std::span<const double>) const override {
    return {0.0, 0.0};
  }
  std::vector<Vec2> sample_points(std::span<const double> p) const override {
    return {Vec2{p[0], p[1]}};
  }

 private:
  Vec2 dir_;
};

/// Mild linear swirl W = (a - b y, a + b x); the two sweep directions do not
/// commute, which the splitting-order probe needs. Valid as long as the grid
/// stays inside |x|, |y| <= span.
class SwirlDriftModel final : public ScenarioModel {
 public:
  SwirlDriftModel(double a, double b, double span) : a_(a), b_(b) {
    name_ = "swirl_drift_test";
    rho_max_ = 1.0;
    v_max_ = 1.0;
    state_dim_ = 2;
    mode_ = AveragingMode::value;
    kernel_radius_ = 0.1;
    p0_ = {0.0, 0.0};
    v_cfl_ = a + b * span;
    c_phi_ = 0.0;
    tv_flux_gradient_sup_ = b;
    // crude but valid: |grad div W| = 0 for this linear field
    tv_divergence_integral_ = 0.0;
  }

  Vec2 drift_field(double, Vec2 x, std::span<const double>) const override {
    return {a_ - b_ * x.y, a_ + b_ * x.x};
  }
  std::vector<double> agent_velocity(double, std::span<const double>,
                                     std::span<const double>) const override {
    return {0.0, 0.0};
  }
  std::vector<Vec2> sample_points(std::span<const double> p) const override {
    return {Vec2{p[0], p[1]}};
  }

 private:
  double a_, b_;
};

/// Smooth compactly supported bump: peak * cos^2 profile inside the given
/// radius around (cx, cy), zero outside.
inline DensityField cosine_bump(const GridSpec& g, double cx, double cy,
                                double radius, double peak, double rho_max) {
  DensityField f(g, rho_max);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      Vec2 c = g.cell_center(i, j);
      double r = std::hypot(c.x - cx, c.y - cy);
      if (r < radius) {
        double w = std::cos(0.5 * std::numbers::pi * r / radius);
        f(i, j) = peak * w * w;
      }
    }
  }
  return f;
}

}  // namespace herdsim::testing
