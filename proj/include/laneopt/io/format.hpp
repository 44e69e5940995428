#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace laneopt::io {

inline constexpr int kPenetrationDecimals = 2;
inline constexpr int kHeadwayDecimals = 4;
inline constexpr int kFlowDecimals = 2;

/// Fixed-point text for `value`; never emits "-0.00".
inline std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string penetration(double p) { return fixed(p, kPenetrationDecimals); }
inline std::string headway(double h) { return fixed(h, kHeadwayDecimals); }
inline std::string flow(double q) { return fixed(q, kFlowDecimals); }

}  // namespace laneopt::io

namespace laneopt::io {

/// Decimals needed to print every point of a grid with spacing `step`
/// (two for the default 0.01 grid, at most six).
inline int penetration_decimals_for(double step) {
  double scale = 100.0;
  for (int d = kPenetrationDecimals; d < 6; ++d, scale *= 10.0) {
    const double scaled = step * scale;
    if (std::abs(scaled - std::round(scaled)) < 1e-9 * scale) return d;
  }
  return 6;
}

}  // namespace laneopt::io
