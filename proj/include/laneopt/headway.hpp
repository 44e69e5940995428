#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "laneopt/errors.hpp"

namespace laneopt {

inline constexpr double kSecondsPerHour = 3600.0;

/// Fraction of CAVs in a traffic stream, always in [0, 1].
class PenetrationRate {
 public:
  constexpr PenetrationRate() = default;
  explicit PenetrationRate(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("penetration rate must lie in [0, 1], got " + std::to_string(value));
    }
  }

  constexpr double value() const { return value_; }
  constexpr double complement() const { return 1.0 - value_; }

  friend constexpr bool operator==(PenetrationRate, PenetrationRate) = default;

 private:
  double value_ = 0.0;
};

/// Mean time headways (seconds) for the four follower/leader class pairs.
/// The first letter is the follower, the second the leader: `am` is a CAV
/// following a manual vehicle.
struct HeadwayProfile {
  double aa = 0.0;
  double am = 0.0;
  double ma = 0.0;
  double mm = 0.0;

  /// Throws DomainError unless all four headways are finite and strictly positive.
  static HeadwayProfile make(double aa, double am, double ma, double mm) {
    HeadwayProfile h{aa, am, ma, mm};
    h.validate();
    return h;
  }

  void validate() const {
    for (double v : {aa, am, ma, mm}) {
      if (!(std::isfinite(v) && v > 0.0)) {
        throw DomainError("headways must be finite and strictly positive");
      }
    }
  }

  friend bool operator==(const HeadwayProfile&, const HeadwayProfile&) = default;
};

enum class Scenario { kNeutral, kConservative, kAggressive };

inline constexpr std::array<Scenario, 3> kAllScenarios = {
    Scenario::kNeutral, Scenario::kConservative, Scenario::kAggressive};

inline constexpr std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kNeutral: return "neutral";
    case Scenario::kConservative: return "conservative";
    case Scenario::kAggressive: return "aggressive";
  }
  return "unknown";
}

inline std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : kAllScenarios) {
    if (scenario_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Built-in CAV technology presets. All three use h_AM = h_MA.
inline constexpr HeadwayProfile preset_profile(Scenario s) {
  switch (s) {
    case Scenario::kNeutral: return {0.45, 1.2, 1.2, 1.8};
    case Scenario::kConservative: return {0.45, 1.8, 1.8, 1.8};
    case Scenario::kAggressive: return {0.3, 1.2, 1.2, 1.8};
  }
  return {};
}

/// Average headway of a randomly mixed stream with CAV share `p`:
/// p^2 h_AA + p(1-p)(h_AM + h_MA) + (1-p)^2 h_MM.
inline double mixed_headway(const HeadwayProfile& h, PenetrationRate p) {
  const double a = p.value();
  const double m = p.complement();
  return a * a * h.aa + a * m * (h.am + h.ma) + m * m * h.mm;
}

/// Single-lane capacity in veh/hr/lane for a stream with CAV share `p`.
inline double mixed_capacity(const HeadwayProfile& h, PenetrationRate p) {
  return kSecondsPerHour / mixed_headway(h, p);
}

/// Follower/leader pair counts. Naming follows HeadwayProfile.
struct PairCounts {
  std::uint64_t aa = 0;
  std::uint64_t am = 0;
  std::uint64_t mm = 0;
  std::uint64_t ma = 0;

  constexpr std::uint64_t total() const { return aa + am + mm + ma; }
  friend constexpr bool operator==(const PairCounts&, const PairCounts&) = default;
};

/// Count-weighted mean headway over an observed population of follower pairs.
inline double average_headway_from_counts(const PairCounts& n, const HeadwayProfile& h) {
  if (n.total() == 0) throw DomainError("empty vehicle population");
  // Weighted by frequency so a homogeneous stream returns its headway exactly.
  const double total = static_cast<double>(n.total());
  return static_cast<double>(n.aa) / total * h.aa + static_cast<double>(n.am) / total * h.am +
         static_cast<double>(n.mm) / total * h.mm + static_cast<double>(n.ma) / total * h.ma;
}

}  // namespace laneopt
