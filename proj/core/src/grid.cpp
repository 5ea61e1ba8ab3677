#include "herdsim/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace herdsim {

void GridSpec::validate() const {
  if (nx < 3 || ny < 3) {
    throw std::invalid_argument("GridSpec: nx and ny must be at least 3");
  }
  if (!(dx > 0.0) || !(dy > 0.0)) {
    throw std::invalid_argument("GridSpec: dx and dy must be positive");
  }
}

GridSpec GridSpec::centered_square(double extent, int n) {
  GridSpec g;
  g.x0 = -extent;
  g.y0 = -extent;
  g.nx = n;
  g.ny = n;
  g.dx = 2.0 * extent / n;
  g.dy = 2.0 * extent / n;
  g.validate();
  return g;
}

DensityField::DensityField(GridSpec grid, double rho_max, double fill)
    : grid_(grid), rho_max_(rho_max), values_(grid.cell_count(), fill) {
  grid_.validate();
  if (!(rho_max > 0.0)) {
    throw std::invalid_argument("DensityField: rho_max must be positive");
  }
}

double mass(const DensityField& field) {
  double sum = 0.0;
  for (double v : field.values()) sum += v;
  return sum * field.grid().cell_area();
}

double l1_distance(const DensityField& a, const DensityField& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("l1_distance: grids do not match");
  }
  const auto& va = a.values();
  const auto& vb = b.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) sum += std::abs(va[k] - vb[k]);
  return sum * a.grid().cell_area();
}

double total_variation(const DensityField& field) {
  const GridSpec& g = field.grid();
  double tvx = 0.0;
  double tvy = 0.0;
  // x-direction jumps, including the jumps against zero ghosts at i=-1, nx
  for (int j = 0; j < g.ny; ++j) {
    double prev = 0.0;
    for (int i = 0; i < g.nx; ++i) {
      double v = field(i, j);
      tvx += std::abs(v - prev);
      prev = v;
    }
    tvx += std::abs(prev);
  }
  for (int i = 0; i < g.nx; ++i) {
    double prev = 0.0;
    for (int j = 0; j < g.ny; ++j) {
      double v = field(i, j);
      tvy += std::abs(v - prev);
      prev = v;
    }
    tvy += std::abs(prev);
  }
  return tvx * g.dy + tvy * g.dx;
}

double support_radius(const DensityField& field, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("support_radius: threshold must be >= 0");
  }
  const GridSpec& g = field.grid();
  double max_sq = -1.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (field(i, j) > threshold) {
        double r2 = g.cell_center(i, j).norm_sq();
        if (r2 > max_sq) max_sq = r2;
      }
    }
  }
  return max_sq < 0.0 ? 0.0 : std::sqrt(max_sq);
}

double support_boundary_gap(const DensityField& field, double threshold) {
  const GridSpec& g = field.grid();
  double gap = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.ny; ++j) {
    double ylo = (j + 0.5) * g.dy;
    double yhi = (g.ny - j - 0.5) * g.dy;
    double dyb = std::min(ylo, yhi);
    for (int i = 0; i < g.nx; ++i) {
      if (field(i, j) > threshold) {
        double xlo = (i + 0.5) * g.dx;
        double xhi = (g.nx - i - 0.5) * g.dx;
        double d = std::min(std::min(xlo, xhi), dyb);
        if (d < gap) gap = d;
      }
    }
  }
  return gap;
}

int connected_components(const DensityField& field, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("connected_components: threshold must be >= 0");
  }
  const GridSpec& g = field.grid();
  const int nx = g.nx;
  const int ny = g.ny;
  std::vector<char> seen(g.cell_count(), 0);
  std::vector<int> stack;
  auto idx = [nx](int i, int j) {
    return static_cast<std::size_t>(j) * nx + i;
  };
  int count = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (seen[idx(i, j)] || !(field(i, j) > threshold)) continue;
      ++count;
      seen[idx(i, j)] = 1;
      stack.push_back(static_cast<int>(idx(i, j)));
      while (!stack.empty()) {
        int cell = stack.back();
        stack.pop_back();
        int ci = cell % nx;
        int cj = cell / nx;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          int ni = ci + di[k];
          int nj = cj + dj[k];
          if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
          if (seen[idx(ni, nj)] || !(field(ni, nj) > threshold)) continue;
          seen[idx(ni, nj)] = 1;
          stack.push_back(static_cast<int>(idx(ni, nj)));
        }
      }
    }
  }
  return count;
}

}  // namespace herdsim
