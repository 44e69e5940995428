#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "laneopt/allocation.hpp"
#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"

namespace laneopt {

/// Penetration grid 0, step, 2*step, ..., 1. The endpoint 1 is always included.
inline std::vector<PenetrationRate> make_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw DomainError("grid step must lie in (0, 1]");
  std::vector<PenetrationRate> grid;
  const double inverse = 1.0 / step;
  const double steps = std::round(inverse);
  if (std::abs(inverse - steps) < 1e-9) {
    // Divides 1 evenly: i / n gives the double nearest each decimal grid value.
    const auto n = static_cast<long>(steps);
    for (long i = 0; i <= n; ++i) grid.emplace_back(static_cast<double>(i) / static_cast<double>(n));
    return grid;
  }
  for (long i = 0;; ++i) {
    const double p = static_cast<double>(i) * step;
    if (p > 1.0) break;
    grid.emplace_back(p);
  }
  if (grid.back().value() < 1.0) grid.emplace_back(1.0);
  return grid;
}

struct SweepPoint {
  PenetrationRate p{};
  OptimizationResult result;
  double single_lane_capacity = 0.0;  ///< mixed_capacity at p, no lanes dedicated
  double unallocated_capacity = 0.0;  ///< C_mix(p'_A) at the optimum

  int optimal_lanes() const { return result.best.dedicated_lanes; }
};

struct SweepSeries {
  FreewayConfig config;
  std::vector<PenetrationRate> grid;
  std::vector<SweepPoint> points;
};

/// Optimal allocation at every grid point.
inline SweepSeries sweep_penetration(const FreewayConfig& config, std::vector<PenetrationRate> grid) {
  if (grid.empty()) throw DomainError("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i].value() > grid[i - 1].value())) {
      throw DomainError("sweep grid must be strictly increasing");
    }
  }
  config.validate();
  if (config.lanes < 2) throw DomainError("managed-lane problem requires L >= 2");

  SweepSeries series{config, std::move(grid), {}};
  series.points.reserve(series.grid.size());
  for (PenetrationRate p : series.grid) {
    SweepPoint pt;
    pt.p = p;
    pt.result = optimize_allocation(config, p);
    pt.single_lane_capacity = mixed_capacity(config.profile, p);
    pt.unallocated_capacity = pt.result.best.mixed_lane_capacity;
    series.points.push_back(std::move(pt));
  }
  return series;
}

/// Closed interval of grid points over which `dedicated_lanes` is optimal.
struct TransitionRange {
  int dedicated_lanes = 0;
  double p_low = 0.0;
  double p_high = 0.0;

  friend bool operator==(const TransitionRange&, const TransitionRange&) = default;
};

/// Maximal runs of equal optimal l_A, in grid order. A value of l_A that is
/// optimal on disjoint stretches yields one range per stretch.
inline std::vector<TransitionRange> extract_transition_ranges(const SweepSeries& series) {
  std::vector<TransitionRange> ranges;
  for (const SweepPoint& pt : series.points) {
    if (!ranges.empty() && ranges.back().dedicated_lanes == pt.optimal_lanes()) {
      ranges.back().p_high = pt.p.value();
    } else {
      ranges.push_back({pt.optimal_lanes(), pt.p.value(), pt.p.value()});
    }
  }
  return ranges;
}

inline long total_optimal_lanes(const SweepSeries& series) {
  long sum = 0;
  for (const SweepPoint& pt : series.points) sum += pt.optimal_lanes();
  return sum;
}

// ---------------------------------------------------------------------------
// Demand calibration

/// An observed interval of penetration over which `dedicated_lanes` is optimal
/// for a preset at a given lane count.
struct CalibrationTarget {
  Scenario scenario = Scenario::kNeutral;
  int lanes = 2;
  int dedicated_lanes = 0;
  double p_low = 0.0;
  double p_high = 0.0;
};

struct TargetFit {
  CalibrationTarget target;
  std::optional<TransitionRange> matched;  ///< empty when l_A is never optimal
  double residual_low = 0.0;
  double residual_high = 0.0;

  double mismatch() const { return residual_low + residual_high; }
  double max_residual() const { return std::max(residual_low, residual_high); }
};

struct DemandScore {
  double demand = 0.0;
  double total_mismatch = 0.0;
};

struct CalibrationReport {
  double best_demand = 0.0;
  double total_mismatch = 0.0;
  std::vector<TargetFit> fits;     ///< at best_demand, in target order
  std::vector<DemandScore> scan;   ///< one entry per candidate demand
};

/// Residual charged per endpoint when the target's l_A never appears in the sweep.
inline constexpr double kMissingRangeResidual = 1.0;

/// Matches each target to the computed range with the same l_A whose endpoints
/// are closest (L1); residuals are the absolute endpoint differences.
inline std::vector<TargetFit> fit_targets(const std::vector<CalibrationTarget>& targets,
                                          double demand, double grid_step = 0.01) {
  const auto grid = make_grid(grid_step);
  std::map<std::pair<Scenario, int>, std::vector<TransitionRange>> cache;

  std::vector<TargetFit> fits;
  fits.reserve(targets.size());
  for (const CalibrationTarget& t : targets) {
    auto key = std::make_pair(t.scenario, t.lanes);
    auto it = cache.find(key);
    if (it == cache.end()) {
      FreewayConfig cfg{t.lanes, demand, preset_profile(t.scenario), std::nullopt};
      it = cache.emplace(key, extract_transition_ranges(sweep_penetration(cfg, grid))).first;
    }

    TargetFit fit{t, std::nullopt, kMissingRangeResidual, kMissingRangeResidual};
    for (const TransitionRange& r : it->second) {
      if (r.dedicated_lanes != t.dedicated_lanes) continue;
      const double lo = std::abs(r.p_low - t.p_low);
      const double hi = std::abs(r.p_high - t.p_high);
      if (!fit.matched || lo + hi < fit.mismatch()) {
        fit.matched = r;
        fit.residual_low = lo;
        fit.residual_high = hi;
      }
    }
    fits.push_back(fit);
  }
  return fits;
}

/// Candidate demands d_min, d_min + step, ..., up to d_max inclusive.
inline std::vector<double> demand_grid(double d_min, double d_max, double step) {
  if (!(step > 0.0) || !(d_max >= d_min) || d_min < 0.0) {
    throw DomainError("demand grid needs 0 <= d_min <= d_max and step > 0");
  }
  std::vector<double> grid;
  const auto n = static_cast<long>(std::floor((d_max - d_min) / step + 1e-9));
  for (long i = 0; i <= n; ++i) grid.push_back(d_min + static_cast<double>(i) * step);
  return grid;
}

/// Picks the demand minimizing the summed L1 endpoint mismatch over all targets.
/// Ties go to the smallest demand. Never fails on poor fits; the report carries
/// the residuals.
inline CalibrationReport calibrate_demand(const std::vector<CalibrationTarget>& targets,
                                          const std::vector<double>& d_grid,
                                          double grid_step = 0.01) {
  if (targets.empty()) throw DomainError("no calibration targets");
  if (d_grid.empty()) throw DomainError("demand grid is empty");

  CalibrationReport report;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    double total = 0.0;
    for (const TargetFit& f : fit_targets(targets, d_grid[i], grid_step)) total += f.mismatch();
    report.scan.push_back({d_grid[i], total});
    // Mismatches are sums of grid-step multiples; 1e-9 absorbs their rounding.
    if (!best || total < report.scan[*best].total_mismatch - 1e-9) best = i;
  }
  report.best_demand = report.scan[*best].demand;
  report.total_mismatch = report.scan[*best].total_mismatch;
  report.fits = fit_targets(targets, report.best_demand, grid_step);
  return report;
}

}  // namespace laneopt
