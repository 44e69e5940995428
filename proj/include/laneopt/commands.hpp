#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "laneopt/allocation.hpp"
#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"
#include "laneopt/io/config.hpp"
#include "laneopt/io/csv.hpp"
#include "laneopt/io/format.hpp"
#include "laneopt/io/svg.hpp"
#include "laneopt/published_ranges.hpp"
#include "laneopt/ring.hpp"
#include "laneopt/sweep.hpp"

namespace laneopt {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitDomainError = 3,
  kExitIoError = 4,
  kExitVerificationFailed = 5,
};

inline constexpr const char* kDefaultOutputDir = "laneopt_out";

/// Runs `body`, translating library exceptions into exit codes.
template <typename Body>
int run_guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

namespace detail {

inline std::filesystem::path prepare_output(const io::RunConfig& cfg) {
  std::filesystem::path dir = cfg.output_dir.value_or(kDefaultOutputDir);
  io::ensure_directory(dir);
  return dir;
}

inline std::vector<PenetrationRate> run_grid(const io::RunConfig& cfg) {
  if (cfg.p) return {PenetrationRate(*cfg.p)};
  return make_grid(cfg.grid_step);
}

inline int run_decimals(const io::RunConfig& cfg) {
  return cfg.p ? io::kPenetrationDecimals : io::penetration_decimals_for(cfg.grid_step);
}

}  // namespace detail

/// Single-lane headway and capacity over the grid (or at one p).
inline int cmd_capacity(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    io::validate_run_config(cfg);
    const HeadwayProfile profile = cfg.headways();
    const std::string table = io::capacity_csv(profile, detail::run_grid(cfg), detail::run_decimals(cfg));
    out << table;
    if (cfg.output_dir) io::write_file_atomic(detail::prepare_output(cfg) / "capacity.csv", table);
    return kExitOk;
  });
}

/// Every candidate l_A at one penetration rate; the optimum is starred.
inline int cmd_optimize(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    io::validate_run_config(cfg);
    if (!cfg.p) throw InputError("optimize needs a penetration rate (--p)");
    const FreewayConfig freeway = cfg.freeway();
    if (freeway.lanes < 2) throw DomainError("managed-lane problem requires L >= 2");
    const OptimizationResult result = optimize_allocation(freeway, PenetrationRate(*cfg.p));
    const std::string table = io::optimize_csv(result);
    out << table;
    out << "optimum: l_A=" << result.best.dedicated_lanes << " Q=" << io::flow(result.best.throughput) << '\n';
    if (cfg.output_dir) io::write_file_atomic(detail::prepare_output(cfg) / "optimize.csv", table);
    return kExitOk;
  });
}

/// Chart definitions written next to sweep.csv.
inline std::vector<std::pair<std::string, io::LineChart>> sweep_charts(const SweepSeries& series) {
  io::ChartSeries lanes{"optimal l_A", {}, true};
  io::ChartSeries throughput{"Q", {}, false};
  io::ChartSeries single{"C_mix single lane", {}, false};
  io::ChartSeries unallocated{"C_mix unallocated", {}, false};
  io::ChartSeries cav_flow{"q_A", {}, false};
  io::ChartSeries mixed_flow{"q_mix", {}, false};
  for (const SweepPoint& pt : series.points) {
    const double p = pt.p.value();
    lanes.points.emplace_back(p, pt.optimal_lanes());
    throughput.points.emplace_back(p, pt.result.best.throughput);
    single.points.emplace_back(p, pt.single_lane_capacity);
    unallocated.points.emplace_back(p, pt.unallocated_capacity);
    cav_flow.points.emplace_back(p, pt.result.best.cav_lane_flow);
    mixed_flow.points.emplace_back(p, pt.result.best.mixed_lane_flow);
  }
  const std::string suffix = " (L=" + std::to_string(series.config.lanes) +
                             ", D=" + io::fixed(series.config.demand, 0) + ")";
  return {
      {"optimal_lanes.svg", {"Optimal dedicated CAV lanes" + suffix, "CAV penetration rate", "l_A", {lanes}, true}},
      {"throughput.svg", {"Total throughput" + suffix, "CAV penetration rate", "veh/hr", {throughput}, false}},
      {"capacity.svg",
       {"Mixed-lane capacity" + suffix, "CAV penetration rate", "veh/hr/lane", {single, unallocated}, false}},
      {"lane_flows.svg",
       {"Per-lane flows at optimum" + suffix, "CAV penetration rate", "veh/hr/lane", {cav_flow, mixed_flow}, false}},
  };
}

/// Penetration sweep: sweep.csv, transitions.csv and SVG charts.
inline int cmd_sweep(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    io::validate_run_config(cfg);
    const FreewayConfig freeway = cfg.freeway();
    if (freeway.lanes < 2) throw DomainError("managed-lane problem requires L >= 2");
    const SweepSeries series = sweep_penetration(freeway, make_grid(cfg.grid_step));
    const auto ranges = extract_transition_ranges(series);
    const int decimals = io::penetration_decimals_for(cfg.grid_step);

    const auto dir = detail::prepare_output(cfg);
    io::write_file_atomic(dir / "sweep.csv", io::sweep_csv(series, decimals));
    const std::string transitions = io::transitions_csv(ranges, decimals);
    io::write_file_atomic(dir / "transitions.csv", transitions);
    for (const auto& [name, chart] : sweep_charts(series)) io::write_file_atomic(dir / name, io::render_svg(chart));

    out << transitions;
    return kExitOk;
  });
}

/// Monte Carlo check of the mixed-headway formula on random rings.
inline int cmd_simulate(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    io::validate_run_config(cfg);
    if (!cfg.p) throw InputError("simulate needs a penetration rate (--p)");
    const io::SimulateOptions sim = cfg.simulate.value_or(io::SimulateOptions{});
    if (sim.vehicles < 2) throw InputError("simulate: n must be at least 2");
    if (sim.trials < 1) throw InputError("simulate: trials must be at least 1");
    if (!(sim.tolerance > 0.0)) throw InputError("simulate: tolerance must be positive");

    const auto report = verify_convergence(cfg.headways(), PenetrationRate(*cfg.p), sim.vehicles,
                                           consecutive_seeds(sim.seed, sim.trials));
    std::string table = "trial,seed,n_AA,n_AM,n_MM,n_MA,empirical_headway\n";
    for (std::size_t k = 0; k < report.trials.size(); ++k) {
      const RingSample& s = report.trials[k];
      table += std::to_string(k) + ',' + std::to_string(s.seed) + ',' + std::to_string(s.counts.aa) + ',' +
               std::to_string(s.counts.am) + ',' + std::to_string(s.counts.mm) + ',' +
               std::to_string(s.counts.ma) + ',' + io::fixed(s.empirical_headway, 6) + '\n';
    }
    out << table;
    out << "closed_form_headway: " << io::fixed(report.closed_form_headway, 6) << '\n';
    out << "mean_empirical_headway: " << io::fixed(report.mean_empirical_headway, 6) << '\n';
    out << "max_relative_deviation: " << io::fixed(report.max_relative_deviation, 6) << '\n';
    if (cfg.output_dir) io::write_file_atomic(detail::prepare_output(cfg) / "simulate.csv", table);

    const bool ok = report.max_relative_deviation < sim.tolerance;
    out << (ok ? "PASS" : "FAIL") << " (tolerance " << io::fixed(sim.tolerance, 6) << ")\n";
    return ok ? kExitOk : kExitVerificationFailed;
  });
}

/// Best-fit demand for a set of observed transition ranges.
inline int cmd_calibrate(const io::RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    io::validate_run_config(cfg);
    std::vector<CalibrationTarget> targets;
    if (cfg.calibrate.targets_path) {
      targets = io::parse_targets_csv(io::read_file(*cfg.calibrate.targets_path), *cfg.calibrate.targets_path);
    } else {
      targets = published_transition_ranges();
    }
    if (targets.empty()) throw InputError("calibrate: targets file lists no ranges");

    std::vector<double> d_grid;
    try {
      d_grid = demand_grid(cfg.calibrate.d_min, cfg.calibrate.d_max, cfg.calibrate.d_step);
    } catch (const DomainError& e) {
      throw InputError(std::string("calibrate: ") + e.what());
    }
    const CalibrationReport report = calibrate_demand(targets, d_grid, cfg.grid_step);

    const auto dir = detail::prepare_output(cfg);
    const std::string fits = io::calibration_csv(report);
    io::write_file_atomic(dir / "calibration.csv", fits);
    io::write_file_atomic(dir / "calibration_scan.csv", io::calibration_scan_csv(report));

    out << "best_D: " << io::flow(report.best_demand) << '\n';
    out << "total_mismatch: " << io::penetration(report.total_mismatch) << '\n';
    out << fits;
    return kExitOk;
  });
}

}  // namespace laneopt
