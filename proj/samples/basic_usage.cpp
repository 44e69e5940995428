// Optimal dedicated CAV lanes on a four-lane freeway across penetration rates.

#include <cstdio>

#include "laneopt/laneopt.hpp"

int main() {
  using namespace laneopt;

  const FreewayConfig freeway{4, kCanonicalDemand, preset_profile(Scenario::kNeutral), std::nullopt};
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto result = optimize_allocation(freeway, PenetrationRate(p));
    std::printf("p=%.2f  l_A=%d  Q=%.1f veh/hr  C_mix(p)=%.1f\n", p, result.best.dedicated_lanes,
                result.best.throughput, mixed_capacity(freeway.profile, PenetrationRate(p)));
  }

  const SweepSeries series = sweep_penetration(freeway, make_grid(0.01));
  for (const TransitionRange& r : extract_transition_ranges(series)) {
    std::printf("l_A=%d optimal for p in [%.2f, %.2f]\n", r.dedicated_lanes, r.p_low, r.p_high);
  }
}
