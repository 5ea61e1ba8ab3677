#include <benchmark/benchmark.h>

#include "herdsim/averaging.hpp"
#include "herdsim/engine.hpp"
#include "herdsim/models.hpp"
#include "herdsim/ode.hpp"
#include "herdsim/pde.hpp"

using namespace herdsim;

namespace {

DensityField piper_field(int n) {
  auto model = make_piper(PiperParams{});
  return initial_density(*model, GridSpec::centered_square(2.0, n));
}

void BM_LxfSweep(benchmark::State& state) {
  auto model = make_piper(PiperParams{});
  DensityField f = piper_field(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  double dt = cfl_dt(*model, f.grid(), cfg);
  const double p[] = {-1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lxf_sweep(f, *model, 0.0, p, dt, Axis::x, cfg));
  }
  state.SetItemsProcessed(state.iterations() * f.grid().cell_count());
}

void BM_PdeStep(benchmark::State& state) {
  auto model = make_piper(PiperParams{});
  DensityField f = piper_field(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  double dt = cfl_dt(*model, f.grid(), cfg);
  const double p[] = {-1.0, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pde_step(f, *model, 0.0, p, dt, 0, cfg));
  }
  state.SetItemsProcessed(state.iterations() * f.grid().cell_count());
}

void BM_ConvolveGradient(benchmark::State& state) {
  auto model = make_dogs(DogsParams{});
  DensityField f =
      initial_density(*model, GridSpec::centered_square(3.0, 600));
  MollifierKernel kernel(model->kernel_radius());
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_grad_at(f, kernel, {0.45, 0.1}));
  }
}

void BM_TotalVariation(benchmark::State& state) {
  DensityField f = piper_field(400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_variation(f));
  }
  state.SetItemsProcessed(state.iterations() * f.grid().cell_count());
}

void BM_EngineStep(benchmark::State& state) {
  // one full coupled step on the default piper grid, amortized
  auto model = make_piper(PiperParams{});
  GridSpec grid = GridSpec::centered_square(2.0, 400);
  SolverConfig cfg;
  double dt = cfl_dt(*model, grid, cfg);
  for (auto _ : state) {
    state.PauseTiming();
    DensityField f = initial_density(*model, grid);
    MollifierKernel kernel(model->kernel_radius());
    std::vector<double> p = model->initial_agent_state();
    state.ResumeTiming();
    for (int k = 0; k < 8; ++k) {
      DensityField next = pde_step(f, *model, k * dt, p, dt, k, cfg);
      p = ode_step(p, *model, f, kernel, k * dt, dt);
      f = std::move(next);
    }
  }
  state.SetItemsProcessed(state.iterations() * 8 * grid.cell_count());
}

}  // namespace

BENCHMARK(BM_LxfSweep)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PdeStep)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveGradient)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TotalVariation)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EngineStep)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
