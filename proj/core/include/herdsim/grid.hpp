#pragma once

#include <cstddef>
#include <vector>

#include "herdsim/vec2.hpp"

namespace herdsim {

/// Uniform rectangular grid of nx-by-ny cells with lower-left corner (x0, y0).
/// Cell (i, j) has center (x0 + (i+1/2) dx, y0 + (j+1/2) dy).
struct GridSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;

  bool operator==(const GridSpec&) const = default;

  Vec2 cell_center(int i, int j) const {
    return {x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy};
  }
  double x_max() const { return x0 + nx * dx; }
  double y_max() const { return y0 + ny * dy; }
  double cell_area() const { return dx * dy; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }

  /// Throws std::invalid_argument unless nx,ny >= 3 and dx,dy > 0.
  void validate() const;

  /// Symmetric square grid [-extent, extent]^2 with n cells per side.
  static GridSpec centered_square(double extent, int n);
};

/// Cell-averaged nonnegative scalar field on a GridSpec, bounded by rho_max.
class DensityField {
 public:
  DensityField() = default;
  DensityField(GridSpec grid, double rho_max, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }
  double rho_max() const { return rho_max_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double operator()(int i, int j) const {
    return values_[static_cast<std::size_t>(j) * grid_.nx + i];
  }
  double& operator()(int i, int j) {
    return values_[static_cast<std::size_t>(j) * grid_.nx + i];
  }

 private:
  GridSpec grid_;
  double rho_max_ = 0.0;
  std::vector<double> values_;
};

/// Discrete integral: sum of values times cell area.
double mass(const DensityField& field);

/// L1 distance of two fields on the same grid; throws on grid mismatch.
double l1_distance(const DensityField& a, const DensityField& b);

/// Discrete total variation with zero ghost values outside the domain:
/// sum over x-jumps weighted by dy plus y-jumps weighted by dx, so a
/// compactly supported plateau contributes its full perimeter measure.
double total_variation(const DensityField& field);

/// Largest distance from the origin to the center of a cell whose value
/// exceeds the threshold; 0 if no cell does.
double support_radius(const DensityField& field, double threshold);

/// Smallest distance from any cell with value > threshold to the domain
/// boundary (infinity norm, distance from the cell center to the nearest
/// grid edge); +infinity if no cell exceeds the threshold.
double support_boundary_gap(const DensityField& field, double threshold);

/// Number of 4-connected components of the set {cells : value > threshold}.
int connected_components(const DensityField& field, double threshold);

/// Default support threshold used by diagnostics and the engine margin
/// check: the first-order scheme spreads strictly positive values one cell
/// per sweep, so raw support is meaningless and a relative cutoff is used.
inline double default_support_threshold(double rho_max) {
  return 1e-10 * rho_max;
}

}  // namespace herdsim
