#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "herdsim/grid.hpp"

using namespace herdsim;

namespace {

DensityField random_field(const GridSpec& g, double rho_max, unsigned seed,
                          double sparsity = 0.0) {
  DensityField f(g, rho_max);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, rho_max);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (double& v : f.values()) {
    v = coin(rng) >= sparsity ? uni(rng) : 0.0;
  }
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("grid");

TEST_CASE("grid spec invariants") {
  GridSpec g{0.0, 0.0, 2, 5, 0.1, 0.1};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.nx = 5;
  g.dx = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g.dx = 0.1;
  CHECK_NOTHROW(g.validate());
  CHECK(g.cell_center(0, 0).x == doctest::Approx(0.05));
  CHECK(g.cell_center(4, 4).y == doctest::Approx(0.45));
}

TEST_CASE("mass of constant fields") {
  GridSpec g{0.0, 0.0, 10, 10, 0.1, 0.1};
  DensityField zero(g, 1.0);
  CHECK(mass(zero) == 0.0);

  DensityField one(g, 1.0, 1.0);
  CHECK(mass(one) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("l1 distance basics and hand value") {
  GridSpec g{0.0, 0.0, 10, 10, 0.1, 0.1};
  DensityField a(g, 1.0, 1.0);
  DensityField b(g, 1.0, 0.0);
  CHECK(l1_distance(a, a) == 0.0);
  CHECK(l1_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));

  DensityField c = b;
  c(4, 7) = 0.5;
  CHECK(l1_distance(b, c) == doctest::Approx(0.005).epsilon(1e-12));

  GridSpec other{0.0, 0.0, 10, 10, 0.2, 0.1};
  DensityField d(other, 1.0);
  CHECK_THROWS_AS((void)l1_distance(a, d), std::invalid_argument);
}

TEST_CASE("l1 distance is a metric on random triples") {
  GridSpec g{-1.0, -1.0, 8, 6, 0.25, 0.33};
  for (unsigned seed = 0; seed < 20; ++seed) {
    DensityField a = random_field(g, 1.0, 3 * seed);
    DensityField b = random_field(g, 1.0, 3 * seed + 1);
    DensityField c = random_field(g, 1.0, 3 * seed + 2);
    double ab = l1_distance(a, b);
    double ba = l1_distance(b, a);
    double ac = l1_distance(a, c);
    double cb = l1_distance(c, b);
    CHECK(ab >= 0.0);
    CHECK(ab == ba);
    CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("total variation hand values") {
  GridSpec g{0.0, 0.0, 9, 9, 0.1, 0.1};
  DensityField zero(g, 1.0);
  CHECK(total_variation(zero) == 0.0);

  // single interior cell of value 1: four jumps of size 1, each of length h
  DensityField spike(g, 1.0);
  spike(4, 4) = 1.0;
  CHECK(total_variation(spike) == doctest::Approx(4.0 * 0.1).epsilon(1e-12));

  // plateau of w x h cells: perimeter measure 2 (w dx + h dy)
  DensityField plateau(g, 1.0);
  for (int j = 2; j < 2 + 5; ++j) {
    for (int i = 3; i < 3 + 4; ++i) plateau(i, j) = 1.0;
  }
  CHECK(total_variation(plateau) ==
        doctest::Approx(2.0 * (4 * 0.1 + 5 * 0.1)).epsilon(1e-12));
}

TEST_CASE("total variation counts the boundary against zero ghosts") {
  GridSpec g{0.0, 0.0, 4, 4, 0.5, 0.25};
  DensityField f(g, 2.0, 2.0);  // constant plateau covering the whole grid
  // x jumps: 2 per row times ny rows, each of size 2 and length dy;
  // y jumps: 2 per column times nx columns, each of size 2 and length dx
  double expect = 2.0 * (4 * 0.25 * 2.0) + 2.0 * (4 * 0.5 * 2.0);
  CHECK(total_variation(f) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("total variation is invariant under 2x refinement") {
  GridSpec g{-1.0, 0.0, 6, 5, 0.3, 0.4};
  for (unsigned seed = 1; seed <= 5; ++seed) {
    DensityField coarse = random_field(g, 1.0, seed, 0.4);
    GridSpec fine{g.x0, g.y0, 2 * g.nx, 2 * g.ny, g.dx / 2, g.dy / 2};
    DensityField refined(fine, 1.0);
    for (int j = 0; j < fine.ny; ++j) {
      for (int i = 0; i < fine.nx; ++i) {
        refined(i, j) = coarse(i / 2, j / 2);
      }
    }
    CHECK(total_variation(refined) ==
          doctest::Approx(total_variation(coarse)).epsilon(1e-12));
  }
}

TEST_CASE("support radius") {
  GridSpec g{0.0, 0.0, 3, 3, 0.6, 0.8};
  DensityField f(g, 1.0);
  CHECK(support_radius(f, 1e-10) == 0.0);

  f(0, 0) = 1.0;  // cell center (0.3, 0.4), distance 0.5 from the origin
  CHECK(support_radius(f, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(support_radius(f, 1.0) == 0.0);  // strictly-above threshold
}

TEST_CASE("support boundary gap") {
  GridSpec g{0.0, 0.0, 10, 10, 0.1, 0.1};
  DensityField f(g, 1.0);
  CHECK(std::isinf(support_boundary_gap(f, 0.0)));
  f(2, 5) = 1.0;  // center (0.25, 0.55): 0.25 from the left edge
  CHECK(support_boundary_gap(f, 0.5) == doctest::Approx(0.25));
  f(9, 5) = 1.0;  // center (0.95, 0.55): 0.05 from the right edge
  CHECK(support_boundary_gap(f, 0.5) == doctest::Approx(0.05));
}

TEST_CASE("connected components") {
  GridSpec g{0.0, 0.0, 8, 8, 0.1, 0.1};
  DensityField f(g, 1.0);
  CHECK(connected_components(f, 1e-10) == 0);

  for (int j = 1; j <= 3; ++j) {
    for (int i = 2; i <= 5; ++i) f(i, j) = 0.7;
  }
  CHECK(connected_components(f, 1e-10) == 1);

  // a second cell separated by a zero row
  f(3, 6) = 0.4;
  CHECK(connected_components(f, 1e-10) == 2);

  // diagonal touch does not connect under 4-connectivity
  DensityField diag(g, 1.0);
  diag(2, 2) = 1.0;
  diag(3, 3) = 1.0;
  CHECK(connected_components(diag, 1e-10) == 2);
}

TEST_CASE("connected components invariant under whole-cell translation") {
  GridSpec g{0.0, 0.0, 12, 12, 0.1, 0.1};
  for (unsigned seed = 0; seed < 10; ++seed) {
    DensityField f(g, 1.0);
    std::mt19937 rng(seed);
    for (int j = 0; j < 6; ++j) {
      for (int i = 0; i < 6; ++i) {
        if (rng() % 3 == 0) f(i + 1, j + 1) = 1.0;
      }
    }
    DensityField shifted(g, 1.0);
    for (int j = 0; j < 6; ++j) {
      for (int i = 0; i < 6; ++i) {
        shifted(i + 4, j + 5) = f(i + 1, j + 1);
      }
    }
    CHECK(connected_components(shifted, 0.5) == connected_components(f, 0.5));
  }
}

TEST_SUITE_END();
