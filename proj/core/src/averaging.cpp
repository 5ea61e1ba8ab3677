#include "herdsim/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace herdsim {

namespace {

struct CellRange {
  int i_lo, i_hi, j_lo, j_hi;  // inclusive; empty when lo > hi
};

CellRange cells_under_kernel(const GridSpec& g, Vec2 point, double radius) {
  CellRange r;
  r.i_lo = std::max(0, static_cast<int>(std::floor((point.x - radius - g.x0) / g.dx)));
  r.i_hi = std::min(g.nx - 1, static_cast<int>(std::ceil((point.x + radius - g.x0) / g.dx)));
  r.j_lo = std::max(0, static_cast<int>(std::floor((point.y - radius - g.y0) / g.dy)));
  r.j_hi = std::min(g.ny - 1, static_cast<int>(std::ceil((point.y + radius - g.y0) / g.dy)));
  return r;
}

}  // namespace

MollifierKernel::MollifierKernel(double radius) : radius_(radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("MollifierKernel: radius must be positive");
  }
  double r2 = radius * radius;
  norm_ = 3.0 / (std::numbers::pi * r2 * r2 * r2);
}

double MollifierKernel::max_value() const {
  return 3.0 / (std::numbers::pi * radius_ * radius_);
}

double MollifierKernel::max_gradient_norm() const {
  return 8.0 / (std::numbers::sqrt3 * std::numbers::pi * radius_ * radius_ * radius_);
}

double convolve_at(const DensityField& field, const MollifierKernel& kernel,
                   Vec2 point) {
  const GridSpec& g = field.grid();
  const CellRange r = cells_under_kernel(g, point, kernel.radius());
  const double area = g.cell_area();
  double sum = 0.0;
  for (int j = r.j_lo; j <= r.j_hi; ++j) {
    for (int i = r.i_lo; i <= r.i_hi; ++i) {
      double v = field(i, j);
      if (v != 0.0) sum += v * kernel.value(point - g.cell_center(i, j));
    }
  }
  return sum * area;
}

Vec2 convolve_grad_at(const DensityField& field, const MollifierKernel& kernel,
                      Vec2 point) {
  const GridSpec& g = field.grid();
  const CellRange r = cells_under_kernel(g, point, kernel.radius());
  const double area = g.cell_area();
  Vec2 sum{0.0, 0.0};
  for (int j = r.j_lo; j <= r.j_hi; ++j) {
    for (int i = r.i_lo; i <= r.i_hi; ++i) {
      double v = field(i, j);
      if (v != 0.0) sum += v * kernel.gradient(point - g.cell_center(i, j));
    }
  }
  return sum * area;
}

std::vector<double> stack_at(const DensityField& field,
                             const MollifierKernel& kernel,
                             std::span<const Vec2> points, AveragingMode mode) {
  std::vector<double> out;
  if (mode == AveragingMode::value) {
    out.reserve(points.size());
    for (Vec2 pt : points) out.push_back(convolve_at(field, kernel, pt));
  } else {
    out.reserve(2 * points.size());
    for (Vec2 pt : points) {
      Vec2 gvec = convolve_grad_at(field, kernel, pt);
      out.push_back(gvec.x);
      out.push_back(gvec.y);
    }
  }
  return out;
}

}  // namespace herdsim
