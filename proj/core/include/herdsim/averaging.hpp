#pragma once

#include <span>
#include <vector>

#include "herdsim/grid.hpp"
#include "herdsim/vec2.hpp"

namespace herdsim {

enum class AveragingMode { value, gradient };

/// Compactly supported bump eta(x) = 3/(pi r^6) * (max{0, r^2 - |x|^2})^2
/// with unit integral over the plane.
class MollifierKernel {
 public:
  explicit MollifierKernel(double radius);

  double radius() const { return radius_; }
  double normalization() const { return norm_; }

  double value(Vec2 d) const {
    double m = radius_ * radius_ - d.norm_sq();
    return m > 0.0 ? norm_ * m * m : 0.0;
  }
  // grad eta(x) = -4 * 3/(pi r^6) * max{0, r^2 - |x|^2} * x
  Vec2 gradient(Vec2 d) const {
    double m = radius_ * radius_ - d.norm_sq();
    return m > 0.0 ? (-4.0 * norm_ * m) * d : Vec2{0.0, 0.0};
  }

  // eta(0) = 3/(pi r^2)
  double max_value() const;
  // attained at |x| = r/sqrt(3): 8/(sqrt(3) pi r^3)
  double max_gradient_norm() const;

 private:
  double radius_ = 0.0;
  double norm_ = 0.0;  // 3/(pi r^6)
};

/// Midpoint-rule sample of (rho * eta) at a point: cells outside the grid
/// contribute zero, consistent with the density vanishing there.
double convolve_at(const DensityField& field, const MollifierKernel& kernel,
                   Vec2 point);

/// Midpoint-rule sample of (rho * grad eta) at a point, using the analytic
/// kernel gradient.
Vec2 convolve_grad_at(const DensityField& field, const MollifierKernel& kernel,
                      Vec2 point);

/// Concatenated per-point convolution results: one scalar per point in value
/// mode, two components per point in gradient mode.
std::vector<double> stack_at(const DensityField& field,
                             const MollifierKernel& kernel,
                             std::span<const Vec2> points, AveragingMode mode);

}  // namespace herdsim
