#pragma once

#include <vector>

#include "laneopt/sweep.hpp"

namespace laneopt {

/// Best-fit per-lane demand (veh/hr/lane) for the published ranges over the
/// demand grid 4000..6000 step 50. Used as the default D.
inline constexpr double kCanonicalDemand = 5050.0;

/// Reported penetration intervals (two-decimal precision) over which each
/// preset dedicates a given number of lanes, for L = 2, 4 and 6 under
/// above-capacity demand. The aggressive L = 6 two-lane interval starts one
/// grid step after its one-lane interval ends.
inline std::vector<CalibrationTarget> published_transition_ranges() {
  using S = Scenario;
  return {
      {S::kConservative, 2, 1, 0.21, 0.90},
      {S::kNeutral, 2, 1, 0.30, 0.81},
      {S::kAggressive, 2, 1, 0.31, 0.72},

      {S::kNeutral, 4, 2, 0.57, 0.83},
      {S::kConservative, 4, 2, 0.51, 0.89},
      {S::kNeutral, 4, 1, 0.14, 0.56},
      {S::kConservative, 4, 1, 0.12, 0.50},
      {S::kAggressive, 4, 1, 0.14, 0.75},

      {S::kNeutral, 6, 3, 0.65, 0.82},
      {S::kConservative, 6, 3, 0.57, 0.89},
      {S::kNeutral, 6, 2, 0.38, 0.78},
      {S::kConservative, 6, 2, 0.34, 0.59},
      {S::kAggressive, 6, 1, 0.09, 0.53},
      {S::kAggressive, 6, 2, 0.54, 0.76},
  };
}

}  // namespace laneopt
