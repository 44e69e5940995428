// laneopt: mixed CAV/manual freeway capacity and dedicated-lane optimization.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "laneopt/commands.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> scenario;
  std::optional<int> lanes;
  std::optional<double> demand;
  std::optional<double> cav_capacity;
  std::optional<double> p;
  std::optional<double> grid_step;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> vehicles;
  std::optional<std::uint64_t> trials;
  std::optional<double> tolerance;
  std::optional<std::string> targets;
  std::optional<double> d_min;
  std::optional<double> d_max;
  std::optional<double> d_step;
  std::optional<std::string> out;
};

void add_common(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON run configuration");
  cmd.add_option("--scenario", f.scenario, "Headway preset: neutral, conservative or aggressive");
  cmd.add_option("--L", f.lanes, "Total lane count");
  cmd.add_option("--D", f.demand, "Per-lane demand (veh/hr/lane)");
  cmd.add_option("--C-A", f.cav_capacity, "Dedicated-lane capacity (veh/hr/lane), default 3600/h_AA");
  cmd.add_option("--p", f.p, "CAV penetration rate in [0, 1]");
  cmd.add_option("--grid-step", f.grid_step, "Penetration grid step (default 0.01)");
  cmd.add_option("--out", f.out, "Output directory (LANEOPT_OUT overrides)");
}

laneopt::io::RunConfig resolve(const Flags& f) {
  using laneopt::InputError;
  laneopt::io::RunConfig cfg;
  if (f.config) cfg = laneopt::io::parse_run_config(laneopt::io::read_file(*f.config), *f.config);

  if (f.scenario) {
    auto s = laneopt::parse_scenario(*f.scenario);
    if (!s) throw InputError("unknown scenario '" + *f.scenario + "' (expected neutral, conservative or aggressive)");
    cfg.scenario = s;
    cfg.profile.reset();
  }
  if (f.lanes) cfg.lanes = *f.lanes;
  if (f.demand) cfg.demand = *f.demand;
  if (f.cav_capacity) cfg.cav_lane_capacity = *f.cav_capacity;
  if (f.p) cfg.p = *f.p;
  if (f.grid_step) cfg.grid_step = *f.grid_step;
  if (f.out) cfg.output_dir = *f.out;
  if (const char* env = std::getenv("LANEOPT_OUT"); env && *env) cfg.output_dir = env;

  if (f.seed || f.vehicles || f.trials || f.tolerance) {
    auto sim = cfg.simulate.value_or(laneopt::io::SimulateOptions{});
    if (f.seed) sim.seed = *f.seed;
    if (f.vehicles) sim.vehicles = *f.vehicles;
    if (f.trials) sim.trials = *f.trials;
    if (f.tolerance) sim.tolerance = *f.tolerance;
    cfg.simulate = sim;
  }
  if (f.targets) cfg.calibrate.targets_path = *f.targets;
  if (f.d_min) cfg.calibrate.d_min = *f.d_min;
  if (f.d_max) cfg.calibrate.d_max = *f.d_max;
  if (f.d_step) cfg.calibrate.d_step = *f.d_step;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed CAV/manual freeway capacity and dedicated-lane optimization"};
  app.require_subcommand(1);

  Flags f;
  auto* capacity = app.add_subcommand("capacity", "Single-lane mixed headway and capacity");
  auto* optimize = app.add_subcommand("optimize", "Throughput for every dedicated-lane count at one p");
  auto* sweep = app.add_subcommand("sweep", "Penetration sweep with CSV and SVG output");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo ring check of the mixed headway");
  auto* calibrate = app.add_subcommand("calibrate", "Fit the per-lane demand to observed lane ranges");
  for (auto* cmd : {capacity, optimize, sweep, simulate, calibrate}) add_common(*cmd, f);

  simulate->add_option("--seed", f.seed, "Base seed; trial k uses seed + k (default 42)");
  simulate->add_option("--n", f.vehicles, "Vehicles per ring (default 1000000)");
  simulate->add_option("--trials", f.trials, "Number of rings (default 10)");
  simulate->add_option("--tolerance", f.tolerance, "Max relative deviation (default 0.01)");
  calibrate->add_option("--targets", f.targets, "CSV of scenario,L,l_A,p_low,p_high (default: published ranges)");
  calibrate->add_option("--d-min", f.d_min, "Smallest candidate demand (default 4000)");
  calibrate->add_option("--d-max", f.d_max, "Largest candidate demand (default 6000)");
  calibrate->add_option("--d-step", f.d_step, "Demand grid step (default 50)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return laneopt::kExitInputError;
  }

  laneopt::io::RunConfig cfg;
  if (int rc = laneopt::run_guarded(std::cerr, [&] { cfg = resolve(f); return 0; }); rc != 0) return rc;

  if (*capacity) return laneopt::cmd_capacity(cfg, std::cout, std::cerr);
  if (*optimize) return laneopt::cmd_optimize(cfg, std::cout, std::cerr);
  if (*sweep) return laneopt::cmd_sweep(cfg, std::cout, std::cerr);
  if (*simulate) return laneopt::cmd_simulate(cfg, std::cout, std::cerr);
  return laneopt::cmd_calibrate(cfg, std::cout, std::cerr);
}
