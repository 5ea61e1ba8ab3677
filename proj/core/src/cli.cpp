#include "herdsim/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <string>

#include "herdsim/config.hpp"
#include "herdsim/engine.hpp"
#include "herdsim/errors.hpp"
#include "herdsim/io.hpp"
#include "herdsim/optimizer.hpp"

namespace herdsim::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeAbort = 2;
constexpr int kDiagnosticFailure = 3;

std::unique_ptr<ScenarioModel> model_for_run(const RunConfig& cfg,
                                             const std::string& route_file,
                                             RouteParam* route_out) {
  if (route_file.empty()) return build_model(cfg);
  if (cfg.scenario != "piper") {
    throw ConfigError("--route applies to the piper scenario only");
  }
  RouteParam route = read_route(route_file);
  if (route_out) *route_out = route;
  PiperParams prm = piper_params(cfg.overrides);
  prm.start = route.start;
  return make_piper(prm, route.interpolant());
}

int simulate(const std::string& config_file, const std::string& out_override,
             const std::string& route_file) {
  RunConfig cfg = parse_config_file(config_file);
  if (!out_override.empty()) cfg.out_dir = out_override;
  auto model = model_for_run(cfg, route_file, nullptr);

  Trajectory traj =
      run(*model, cfg.grid, SolverConfig{cfg.cfl_factor, cfg.clamp}, cfg.t_end,
          cfg.snapshot_times);
  auto checks = check_run(traj, *model);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "rho_t%03zu", k);
    if (cfg.format_csv) {
      write_snapshot(traj.snapshots[k].second, traj.snapshots[k].first,
                     dir / (std::string(name) + ".csv"));
    }
    if (cfg.format_pgm) {
      write_pgm(traj.snapshots[k].second, dir / (std::string(name) + ".pgm"));
    }
  }
  write_trajectory(traj, dir / "agents.csv");
  write_report(traj, *model, checks, dir / "report.txt");

  const auto& p = traj.final_agent_state();
  std::printf("%s: %zu steps to t=%g, final agent state (", cfg.scenario.c_str(),
              traj.times.size() - 1, traj.times.back());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::printf("%s%.6g", i ? ", " : "", p[i]);
  }
  std::printf("), outputs in %s\n", cfg.out_dir.c_str());
  return kOk;
}

int diagnose(const std::string& config_file, const std::vector<double>& deltas) {
  RunConfig cfg = parse_config_file(config_file);
  auto model = build_model(cfg);
  const SolverConfig solver{cfg.cfl_factor, cfg.clamp};

  Trajectory traj = run(*model, cfg.grid, solver, cfg.t_end, cfg.snapshot_times);
  auto checks = check_run(traj, *model);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  write_report(traj, *model, checks, dir / "report.txt");

  bool all_pass = true;
  for (const CheckResult& c : checks) {
    std::printf("%-12s %s (measured %.6g, limit %.6g)\n", c.name.c_str(),
                c.pass ? "pass" : "FAIL", c.measured, c.limit);
    all_pass = all_pass && c.pass;
  }

  if (!deltas.empty()) {
    StabilityTable table =
        stability_report(*model, cfg.grid, solver, cfg.t_end, deltas);
    write_stability(table, dir / "stability.csv");
    for (const StabilityRow& r : table.rows) {
      std::printf("delta %-7g l1 drift %.6g (ratio %.6g)  agent drift %.6g (ratio %.6g)\n",
                  r.delta, r.l1_drift, r.l1_ratio, r.agent_drift, r.agent_ratio);
    }
    if (table.flagged) {
      std::printf("stability FLAGGED: %s\n", table.flag_reason.c_str());
      all_pass = false;
    }
  }
  return all_pass ? kOk : kDiagnosticFailure;
}

int optimize_cmd(const std::string& config_file, const std::string& out_override) {
  RunConfig cfg = parse_config_file(config_file);
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (cfg.scenario != "piper") {
    throw ConfigError("optimize supports the piper scenario only");
  }
  PiperParams prm = piper_params(cfg.overrides);
  ObjectiveSpec spec = ObjectiveSpec::for_piper(prm, cfg.opt_t_max);
  if (cfg.opt_k_set) {
    spec.k_x0 = cfg.opt_k_x0;
    spec.k_y0 = cfg.opt_k_y0;
    spec.k_x1 = cfg.opt_k_x1;
    spec.k_y1 = cfg.opt_k_y1;
  }

  // coarse search grid with the run grid's extents
  GridSpec coarse{cfg.grid.x0, cfg.grid.y0, cfg.opt_nx, cfg.opt_nx,
                  (cfg.grid.x_max() - cfg.grid.x0) / cfg.opt_nx,
                  (cfg.grid.y_max() - cfg.grid.y0) / cfg.opt_nx};
  const SolverConfig solver{cfg.cfl_factor, cfg.clamp};

  OptimizeResult res = optimize(spec, prm, coarse, solver, cfg.opt_budget,
                                cfg.opt_seed, cfg.opt_nodes);
  double full_value = objective(res.best, spec, prm, cfg.grid, solver);

  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  write_route(res.best, dir / "best_route.csv");
  write_history(res.history, dir / "history.csv");

  std::printf("best objective %.8g on the %dx%d search grid, %.8g at full resolution\n",
              res.best_value, cfg.opt_nx, cfg.opt_nx, full_value);
  std::printf("route start (%.6g, %.6g), %zu nodes, outputs in %s\n",
              res.best.start.x, res.best.start.y, res.best.nodes.size(),
              cfg.out_dir.c_str());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"coupled agent-continuum simulation engine"};
  app.require_subcommand(1);

  std::string config_file, out_dir, route_file;
  std::vector<double> deltas;

  CLI::App* sim = app.add_subcommand("simulate", "run a scenario and write snapshots");
  sim->add_option("--config", config_file, "config file")->required();
  sim->add_option("--out", out_dir, "output directory (overrides config)");
  sim->add_option("--route", route_file, "replace the walker direction profile by a route CSV");

  CLI::App* diag = app.add_subcommand("diagnose", "verify the analytic guarantees on a run");
  diag->add_option("--config", config_file, "config file")->required();
  diag->add_option("--deltas", deltas, "perturbation sizes for the stability probe")
      ->delimiter(',');

  CLI::App* opt = app.add_subcommand("optimize", "search for a walker route minimizing leftover mass");
  opt->add_option("--config", config_file, "config file")->required();
  opt->add_option("--out", out_dir, "output directory (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (sim->parsed()) return simulate(config_file, out_dir, route_file);
    if (diag->parsed()) return diagnose(config_file, deltas);
    if (opt->parsed()) return optimize_cmd(config_file, out_dir);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const DomainTooSmallError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const MarginError& e) {
    std::fprintf(stderr, "runtime abort: %s\n", e.what());
    return kRuntimeAbort;
  } catch (const CflError& e) {
    std::fprintf(stderr, "runtime abort: %s\n", e.what());
    return kRuntimeAbort;
  } catch (const NonFiniteError& e) {
    std::fprintf(stderr, "runtime abort: %s\n", e.what());
    return kRuntimeAbort;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeAbort;
  }
  return kConfigError;
}

}  // namespace herdsim::cli
