#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"

namespace laneopt {

/// Bernoulli draws from std::mt19937_64. The engine's output sequence is fixed by
/// the C++ standard; the uniform conversion is done here (top 53 bits) because the
/// standard distributions are implementation-defined.
class CavSampler {
 public:
  explicit CavSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool is_cav(PenetrationRate p) { return uniform() < p.value(); }

 private:
  std::mt19937_64 engine_;
};

/// One random ring of vehicles, reduced to its follower/leader pair counts.
struct RingSample {
  std::uint64_t vehicles = 0;
  std::uint64_t seed = 0;
  PenetrationRate penetration{};
  PairCounts counts{};
  double empirical_headway = 0.0;
};

/// Pair counts of a circular class sequence; vehicle i follows vehicle i-1 (mod n).
inline PairCounts count_ring_pairs(const std::vector<bool>& is_cav) {
  PairCounts c;
  const std::size_t n = is_cav.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool follower = is_cav[i];
    const bool leader = is_cav[(i + n - 1) % n];
    if (follower) {
      ++(leader ? c.aa : c.am);
    } else {
      ++(leader ? c.ma : c.mm);
    }
  }
  return c;
}

/// Draws `vehicles` i.i.d. classes (CAV with probability p) and counts pairs circularly.
inline RingSample generate_ring(std::uint64_t vehicles, PenetrationRate p, std::uint64_t seed,
                                const HeadwayProfile& profile) {
  if (vehicles < 2) throw DomainError("ring needs at least 2 vehicles");
  CavSampler sampler(seed);

  RingSample s;
  s.vehicles = vehicles;
  s.seed = seed;
  s.penetration = p;

  // Streamed: only the first and previous class are kept.
  const bool first = sampler.is_cav(p);
  bool previous = first;
  auto tally = [&s](bool follower, bool leader) {
    if (follower) {
      ++(leader ? s.counts.aa : s.counts.am);
    } else {
      ++(leader ? s.counts.ma : s.counts.mm);
    }
  };
  for (std::uint64_t i = 1; i < vehicles; ++i) {
    const bool current = sampler.is_cav(p);
    tally(current, previous);
    previous = current;
  }
  tally(first, previous);  // close the ring

  s.empirical_headway = average_headway_from_counts(s.counts, profile);
  return s;
}

struct ConvergenceReport {
  std::vector<RingSample> trials;
  double mean_empirical_headway = 0.0;
  double closed_form_headway = 0.0;
  double max_relative_deviation = 0.0;
};

/// Seeds used by verify_convergence when the caller supplies only a base seed.
inline std::vector<std::uint64_t> consecutive_seeds(std::uint64_t base, std::size_t trials) {
  std::vector<std::uint64_t> seeds(trials);
  for (std::size_t k = 0; k < trials; ++k) seeds[k] = base + k;
  return seeds;
}

/// Runs one ring per seed and compares each empirical headway to mixed_headway.
inline ConvergenceReport verify_convergence(const HeadwayProfile& profile, PenetrationRate p,
                                            std::uint64_t vehicles,
                                            const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw DomainError("at least one trial is required");
  profile.validate();

  ConvergenceReport r;
  r.closed_form_headway = mixed_headway(profile, p);
  r.trials.reserve(seeds.size());
  double sum = 0.0;
  for (std::uint64_t seed : seeds) {
    RingSample s = generate_ring(vehicles, p, seed, profile);
    sum += s.empirical_headway;
    r.max_relative_deviation =
        std::max(r.max_relative_deviation,
                 std::abs(s.empirical_headway - r.closed_form_headway) / r.closed_form_headway);
    r.trials.push_back(s);
  }
  r.mean_empirical_headway = sum / static_cast<double>(seeds.size());
  return r;
}

}  // namespace laneopt
