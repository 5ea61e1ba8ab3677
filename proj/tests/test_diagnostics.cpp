#include <doctest.h>

#include <cmath>
#include <numbers>

#include "herdsim/diagnostics.hpp"
#include "herdsim/engine.hpp"
#include "herdsim/models.hpp"
#include "test_support.hpp"

using namespace herdsim;

namespace {

bool check_named(const std::vector<CheckResult>& checks, const char* name) {
  for (const CheckResult& c : checks) {
    if (c.name == name) return c.pass;
  }
  FAIL("no check named ", name);
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("diagnostics");

TEST_CASE("tv bound at time zero is the initial TV") {
  auto m = make_piper(PiperParams{});
  CHECK(tv_bound(*m, 3.7, 0.0) == 3.7);
}

TEST_CASE("tv bound is constant for x-independent fluxes") {
  herdsim::testing::UniformDriftModel m({0.4, 0.3});
  CHECK(tv_bound(m, 2.0, 0.0) == 2.0);
  CHECK(tv_bound(m, 2.0, 1.0) == 2.0);
  CHECK(tv_bound(m, 2.0, 50.0) == 2.0);
}

TEST_CASE("tv bound matches its closed form and is nondecreasing") {
  auto m = make_prey(PreyParams{});
  const double tv0 = 1.2;
  double prev = tv0;
  for (double t : {0.0, 0.05, 0.1, 0.2, 0.4}) {
    // two space dimensions: kappa = 5 sup, additive weight 2 W_2 = pi/2
    double expect = (tv0 + 2.0 * (std::numbers::pi / 4.0) * t *
                               m->tv_divergence_integral()) *
                    std::exp(5.0 * m->tv_flux_gradient_sup() * t);
    double got = tv_bound(*m, tv0, t);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    CHECK(got >= prev);
    prev = got;
  }
}

TEST_CASE("a healthy run passes every check") {
  auto m = make_piper(PiperParams{});
  GridSpec g = GridSpec::centered_square(2.0, 100);
  const double snaps[] = {0.1, 0.2};
  Trajectory traj = run(*m, g, SolverConfig{}, 0.2, snaps);
  auto checks = check_run(traj, *m);
  for (const CheckResult& c : checks) {
    INFO(c.name, ": measured ", c.measured, " limit ", c.limit);
    CHECK(c.pass);
  }
  // idempotent and deterministic
  auto again = check_run(traj, *m);
  REQUIRE(again.size() == checks.size());
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CHECK(again[i].pass == checks[i].pass);
    CHECK(again[i].measured == checks[i].measured);
  }
}

TEST_CASE("a vacuum run passes with all-zero density quantities") {
  auto m = make_piper(PiperParams{});
  GridSpec g = GridSpec::centered_square(2.0, 50);
  DensityField zero(g, 1.0);
  Trajectory traj = run(*m, g, SolverConfig{}, 0.5, {}, &zero);
  auto checks = check_run(traj, *m);
  for (const CheckResult& c : checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
  for (const SnapshotStats& s : traj.report.snapshots) {
    CHECK(s.tv == 0.0);
    CHECK(s.support_radius == 0.0);
    CHECK(s.components == 0);
  }
}

TEST_CASE("a deliberately violated CFL factor fails the range check") {
  auto m = make_piper(PiperParams{});
  GridSpec g = GridSpec::centered_square(4.0, 50);
  SolverConfig unstable{3.0, false};
  double dt = cfl_dt(*m, g, unstable);
  Trajectory traj = run(*m, g, unstable, 4.0 * dt, {});
  auto checks = check_run(traj, *m);
  CHECK_FALSE(check_named(checks, "range"));
}

TEST_CASE("stability table scaling and flags") {
  auto m = make_piper(PiperParams{});
  GridSpec g = GridSpec::centered_square(2.0, 100);

  SUBCASE("zero delta row") {
    const double deltas[] = {0.0};
    StabilityTable t = stability_report(*m, g, SolverConfig{}, 0.1, deltas);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].l1_drift == 0.0);
    CHECK(t.rows[0].agent_drift == 0.0);
    CHECK_FALSE(t.flagged);
  }

  SUBCASE("two consistent deltas are not flagged") {
    const double deltas[] = {0.02, 0.01};
    StabilityTable t = stability_report(*m, g, SolverConfig{}, 0.15, deltas);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].l1_ratio > 0.0);
    double hi = std::max(t.rows[0].l1_ratio, t.rows[1].l1_ratio);
    double lo = std::min(t.rows[0].l1_ratio, t.rows[1].l1_ratio);
    CHECK(hi / lo <= 2.0);
    CHECK_FALSE(t.flagged);
  }

  SUBCASE("deltas outside the probe range are rejected") {
    const double deltas[] = {0.5};
    CHECK_THROWS_AS(
        (void)stability_report(*m, g, SolverConfig{}, 0.1, deltas),
        std::invalid_argument);
  }
}

TEST_SUITE_END();
