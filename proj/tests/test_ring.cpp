#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "laneopt/ring.hpp"
#include "oracle.hpp"

using namespace laneopt;

namespace {
const HeadwayProfile kNeutral = preset_profile(Scenario::kNeutral);
const HeadwayProfile kConservative = preset_profile(Scenario::kConservative);
}  // namespace

TEST(CavSampler, EngineIsStandardMt19937_64) {
  // The standard pins the 10000th output of a default-constructed mt19937_64.
  std::mt19937_64 engine(5489u);
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ull);
}

TEST(CavSampler, UniformInUnitInterval) {
  CavSampler s(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(GenerateRing, HomogeneousStreams) {
  EXPECT_EQ(generate_ring(4, PenetrationRate(0.0), 123, kNeutral).counts, (PairCounts{0, 0, 4, 0}));
  EXPECT_EQ(generate_ring(4, PenetrationRate(1.0), 123, kNeutral).counts, (PairCounts{4, 0, 0, 0}));
  EXPECT_THROW(generate_ring(1, PenetrationRate(0.5), 1, kNeutral), DomainError);
  EXPECT_THROW(generate_ring(0, PenetrationRate(0.5), 1, kNeutral), DomainError);
}

TEST(GenerateRing, MillionVehiclesNearClosedForm) {
  const RingSample s = generate_ring(1'000'000, PenetrationRate(0.5), 42, kNeutral);
  EXPECT_NEAR(s.empirical_headway, 1.1625, 0.01 * 1.1625);
}

TEST(GenerateRing, StreamedCountsMatchMaterializedRing) {
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const PenetrationRate p(0.37);
    CavSampler sampler(seed);
    std::vector<bool> classes(5000);
    for (std::size_t i = 0; i < classes.size(); ++i) classes[i] = sampler.is_cav(p);
    EXPECT_EQ(generate_ring(classes.size(), p, seed, kNeutral).counts, count_ring_pairs(classes));
  }
}

TEST(GenerateRing, CountConservationAndDeterminism) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 2 + rng() % 3000;
    const PenetrationRate p(oracle::uniform(rng, 0.0, 1.0));
    const std::uint64_t seed = rng();
    const RingSample a = generate_ring(n, p, seed, kNeutral);
    EXPECT_EQ(a.counts.total(), n);
    EXPECT_EQ(a.counts.am, a.counts.ma);
    const RingSample b = generate_ring(n, p, seed, kNeutral);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.empirical_headway, b.empirical_headway);
  }
}

TEST(GenerateRing, PinnedSequence) {
  // Regression pin: any change here breaks reproducibility of published runs.
  const RingSample s = generate_ring(1000, PenetrationRate(0.3), 7, kNeutral);
  EXPECT_EQ(s.counts, (PairCounts{94, 218, 470, 218}));
}

TEST(GenerateRing, PairFrequenciesUnbiased) {
  const double p = 0.3;
  const int seeds = 400;
  const std::uint64_t n = 2000;
  double f_aa = 0, f_am = 0, f_mm = 0;
  for (int k = 0; k < seeds; ++k) {
    const auto c = generate_ring(n, PenetrationRate(p), 1000 + k, kNeutral).counts;
    f_aa += static_cast<double>(c.aa) / n;
    f_am += static_cast<double>(c.am) / n;
    f_mm += static_cast<double>(c.mm) / n;
  }
  // Standard error of each mean frequency is below 0.0005 here.
  EXPECT_NEAR(f_aa / seeds, p * p, 0.002);
  EXPECT_NEAR(f_am / seeds, p * (1 - p), 0.002);
  EXPECT_NEAR(f_mm / seeds, (1 - p) * (1 - p), 0.002);
}

TEST(RingOracle, ExhaustiveSmallRingsMatchClosedForm) {
  for (int n = 2; n <= 10; ++n) {
    for (double p : {0.2, 0.5, 0.8}) {
      const double exact = oracle::exhaustive_ring_expectation(kConservative, p, n);
      const double closed = mixed_headway(kConservative, PenetrationRate(p));
      EXPECT_NEAR(exact, closed, 1e-12 * closed) << "n=" << n << " p=" << p;
    }
  }
}

TEST(VerifyConvergence, HomogeneousHasZeroDeviation) {
  for (double p : {0.0, 1.0}) {
    const auto r = verify_convergence(kNeutral, PenetrationRate(p), 100, {5});
    EXPECT_EQ(r.max_relative_deviation, 0.0);
  }
}

TEST(VerifyConvergence, LargeRingsWithinOnePercent) {
  auto r = verify_convergence(kNeutral, PenetrationRate(0.5), 1'000'000, consecutive_seeds(42, 10));
  EXPECT_EQ(r.trials.size(), 10u);
  EXPECT_DOUBLE_EQ(r.closed_form_headway, 1.1625);
  EXPECT_LT(r.max_relative_deviation, 0.01);

  r = verify_convergence(kConservative, PenetrationRate(0.3), 1'000'000, consecutive_seeds(42, 10));
  EXPECT_NEAR(r.closed_form_headway, 1.6785, 1e-12);
  EXPECT_LT(r.max_relative_deviation, 0.01);
  EXPECT_NEAR(r.mean_empirical_headway, r.closed_form_headway, 0.01 * r.closed_form_headway);
}

TEST(VerifyConvergence, RequiresTrials) {
  EXPECT_THROW(verify_convergence(kNeutral, PenetrationRate(0.5), 100, {}), DomainError);
}
