#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"

namespace laneopt {

/// Freeway geometry and demand.
struct FreewayConfig {
  int lanes = 2;                   ///< L
  double demand = 0.0;             ///< D, veh/hr/lane; total demand is lanes * demand
  HeadwayProfile profile{};
  std::optional<double> cav_lane_capacity_override{};  ///< C_A; defaults to 3600 / h_AA

  double cav_lane_capacity() const {
    return cav_lane_capacity_override.value_or(kSecondsPerHour / profile.aa);
  }
  double total_demand() const { return static_cast<double>(lanes) * demand; }

  void validate() const {
    if (lanes < 1) throw DomainError("lane count must be at least 1");
    if (!(std::isfinite(demand) && demand >= 0.0)) {
      throw DomainError("per-lane demand must be finite and non-negative");
    }
    profile.validate();
    const double ca = cav_lane_capacity();
    if (!(std::isfinite(ca) && ca > 0.0)) {
      throw DomainError("dedicated-lane capacity must be finite and positive");
    }
  }
};

/// Every flow quantity for one candidate number of dedicated lanes.
struct AllocationEvaluation {
  int dedicated_lanes = 0;          ///< l_A
  double cav_lane_flow = 0.0;       ///< q_A, veh/hr/lane
  PenetrationRate residual_penetration{};  ///< p'_A in the unallocated lanes
  double mixed_lane_capacity = 0.0;  ///< C_mix(p'_A), veh/hr/lane
  double mixed_lane_flow = 0.0;      ///< q_mix, veh/hr/lane
  double throughput = 0.0;           ///< Q, veh/hr
};

struct OptimizationResult {
  AllocationEvaluation best;
  std::vector<AllocationEvaluation> candidates;  ///< indexed by l_A = 0..L
};

namespace detail {

inline void check_dedicated_lanes(const FreewayConfig& config, int dedicated_lanes) {
  if (dedicated_lanes < 0 || dedicated_lanes > config.lanes) {
    throw DomainError("dedicated lane count " + std::to_string(dedicated_lanes) +
                      " outside [0, " + std::to_string(config.lanes) + "]");
  }
}

}  // namespace detail

/// Throughputs closer than this (relative) are treated as tied.
inline bool throughput_tied(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Per-lane flow on the dedicated lanes: min(p L D, l_A C_A) / max(1, l_A).
inline double cav_lane_flow(const FreewayConfig& config, PenetrationRate p, int dedicated_lanes) {
  detail::check_dedicated_lanes(config, dedicated_lanes);
  const double cav_demand = p.value() * config.total_demand();
  const double lane_capacity = static_cast<double>(dedicated_lanes) * config.cav_lane_capacity();
  return std::min(cav_demand, lane_capacity) / std::max(1.0, static_cast<double>(dedicated_lanes));
}

/// CAV share left in the unallocated lanes once the dedicated lanes are full.
/// Zero whenever the dedicated lanes absorb all CAV demand.
inline PenetrationRate residual_penetration(const FreewayConfig& config, PenetrationRate p,
                                            int dedicated_lanes, double cav_flow) {
  const double lanes_a = static_cast<double>(dedicated_lanes);
  const double overflow = std::max(0.0, p.value() * config.total_demand() -
                                            lanes_a * config.cav_lane_capacity());
  const double remaining = std::max(1.0, config.total_demand() - lanes_a * cav_flow);
  // overflow <= remaining analytically; clamp away the rounding.
  return PenetrationRate(std::clamp(overflow / remaining, 0.0, 1.0));
}

/// Capacity of each unallocated lane at residual CAV share `p_residual`.
inline double mixed_lane_capacity(const HeadwayProfile& profile, PenetrationRate p_residual) {
  return mixed_capacity(profile, p_residual);
}

/// Per-lane flow on the unallocated lanes. Zero when every lane is dedicated.
inline double mixed_lane_flow(const FreewayConfig& config, int dedicated_lanes, double cav_flow,
                              double mixed_capacity_value) {
  detail::check_dedicated_lanes(config, dedicated_lanes);
  if (dedicated_lanes == config.lanes) return 0.0;
  const double lanes_a = static_cast<double>(dedicated_lanes);
  const double leftover = config.total_demand() - lanes_a * cav_flow;
  const double per_lane = leftover / std::max(1.0, static_cast<double>(config.lanes - dedicated_lanes));
  return std::min(per_lane, mixed_capacity_value);
}

/// Total throughput for `dedicated_lanes` CAV-only lanes.
inline AllocationEvaluation evaluate_allocation(const FreewayConfig& config, PenetrationRate p,
                                                int dedicated_lanes) {
  detail::check_dedicated_lanes(config, dedicated_lanes);
  AllocationEvaluation e;
  e.dedicated_lanes = dedicated_lanes;
  e.cav_lane_flow = cav_lane_flow(config, p, dedicated_lanes);
  e.residual_penetration = residual_penetration(config, p, dedicated_lanes, e.cav_lane_flow);
  e.mixed_lane_capacity = mixed_lane_capacity(config.profile, e.residual_penetration);
  e.mixed_lane_flow = mixed_lane_flow(config, dedicated_lanes, e.cav_lane_flow, e.mixed_lane_capacity);
  e.throughput = static_cast<double>(config.lanes - dedicated_lanes) * e.mixed_lane_flow +
                 static_cast<double>(dedicated_lanes) * e.cav_lane_flow;
  return e;
}

/// Exhaustive search over l_A = 0..L for maximum throughput. Ties (see
/// throughput_tied) go to the fewest dedicated lanes.
inline OptimizationResult optimize_allocation(const FreewayConfig& config, PenetrationRate p) {
  config.validate();
  if (config.lanes < 2) throw DomainError("managed-lane problem requires L >= 2");

  OptimizationResult result;
  result.candidates.reserve(static_cast<std::size_t>(config.lanes) + 1);
  for (int lanes_a = 0; lanes_a <= config.lanes; ++lanes_a) {
    result.candidates.push_back(evaluate_allocation(config, p, lanes_a));
  }
  result.best = result.candidates.front();
  for (const auto& c : result.candidates) {
    if (c.throughput > result.best.throughput && !throughput_tied(c.throughput, result.best.throughput)) {
      result.best = c;
    }
  }
  return result;
}

}  // namespace laneopt
