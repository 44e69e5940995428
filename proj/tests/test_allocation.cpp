#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "laneopt/allocation.hpp"
#include "oracle.hpp"

using namespace laneopt;

namespace {

FreewayConfig make(int lanes, double demand, Scenario s, std::optional<double> c_a = std::nullopt) {
  return {lanes, demand, preset_profile(s), c_a};
}

double tol(double x) { return 1e-9 * std::max(1.0, std::abs(x)); }

}  // namespace

TEST(FreewayConfig, DefaultCavCapacityFromHeadway) {
  EXPECT_DOUBLE_EQ(make(2, 5000, Scenario::kNeutral).cav_lane_capacity(), 8000.0);
  EXPECT_DOUBLE_EQ(make(2, 5000, Scenario::kAggressive).cav_lane_capacity(), 12000.0);
  EXPECT_DOUBLE_EQ(make(2, 5000, Scenario::kAggressive, 7000.0).cav_lane_capacity(), 7000.0);
  EXPECT_THROW(make(0, 5000, Scenario::kNeutral).validate(), DomainError);
  EXPECT_THROW(make(2, -1, Scenario::kNeutral).validate(), DomainError);
  EXPECT_THROW(make(2, 100, Scenario::kNeutral, 0.0).validate(), DomainError);
}

TEST(CavLaneFlow, Examples) {
  const auto cfg = make(2, 5000, Scenario::kNeutral, 8000.0);
  EXPECT_NEAR(cav_lane_flow(cfg, PenetrationRate(0.21), 1), 2100.0, 1e-9);
  EXPECT_NEAR(cav_lane_flow(cfg, PenetrationRate(0.9), 1), 8000.0, 1e-9);
  EXPECT_EQ(cav_lane_flow(cfg, PenetrationRate(0.7), 0), 0.0);
  EXPECT_THROW(cav_lane_flow(cfg, PenetrationRate(0.5), 3), DomainError);
  EXPECT_THROW(cav_lane_flow(cfg, PenetrationRate(0.5), -1), DomainError);
}

TEST(ResidualPenetration, Examples) {
  const auto cfg = make(2, 5000, Scenario::kNeutral, 8000.0);
  EXPECT_DOUBLE_EQ(residual_penetration(cfg, PenetrationRate(0.37), 0, 0.0).value(), 0.37);
  EXPECT_DOUBLE_EQ(residual_penetration(cfg, PenetrationRate(0.9), 1, 8000.0).value(), 0.5);
  EXPECT_EQ(residual_penetration(cfg, PenetrationRate(0.3), 1, 3000.0).value(), 0.0);
}

TEST(MixedLaneCapacity, Examples) {
  EXPECT_NEAR(mixed_lane_capacity(preset_profile(Scenario::kConservative), PenetrationRate(0.0)), 2000.0, 1e-9);
  EXPECT_NEAR(mixed_lane_capacity(preset_profile(Scenario::kConservative), PenetrationRate(0.5)), 2461.54, 0.005);
  EXPECT_NEAR(mixed_lane_capacity(preset_profile(Scenario::kAggressive), PenetrationRate(1.0)), 12000.0, 1e-8);
}

TEST(MixedLaneFlow, Examples) {
  EXPECT_EQ(mixed_lane_flow(make(2, 5000, Scenario::kNeutral), 1, 2100.0, 2000.0), 2000.0);
  EXPECT_EQ(mixed_lane_flow(make(2, 1500, Scenario::kNeutral), 0, 0.0, 2068.5), 1500.0);
  EXPECT_EQ(mixed_lane_flow(make(2, 5000, Scenario::kNeutral), 2, 5000.0, 1234.0), 0.0);
}

TEST(EvaluateAllocation, ConservativeHalfPenetration) {
  const auto cfg = make(2, 5000, Scenario::kConservative);
  const auto one = evaluate_allocation(cfg, PenetrationRate(0.5), 1);
  EXPECT_NEAR(one.cav_lane_flow, 5000.0, 1e-9);
  EXPECT_EQ(one.residual_penetration.value(), 0.0);
  EXPECT_NEAR(one.mixed_lane_capacity, 2000.0, 1e-9);
  EXPECT_NEAR(one.mixed_lane_flow, 2000.0, 1e-9);
  EXPECT_NEAR(one.throughput, 7000.0, 1e-9);

  const auto zero = evaluate_allocation(cfg, PenetrationRate(0.5), 0);
  EXPECT_EQ(zero.cav_lane_flow, 0.0);
  EXPECT_DOUBLE_EQ(zero.residual_penetration.value(), 0.5);
  EXPECT_NEAR(zero.mixed_lane_capacity, 2461.538461538461, 1e-8);
  EXPECT_NEAR(zero.mixed_lane_flow, 2461.538461538461, 1e-8);
  EXPECT_NEAR(zero.throughput, 4923.076923076923, 1e-8);
}

TEST(EvaluateAllocation, ZeroDemand) {
  for (int la = 0; la <= 2; ++la) {
    EXPECT_EQ(evaluate_allocation(make(2, 0, Scenario::kNeutral), PenetrationRate(0.6), la).throughput, 0.0);
  }
}

TEST(OptimizeAllocation, Examples) {
  auto r = optimize_allocation(make(2, 5000, Scenario::kConservative), PenetrationRate(0.5));
  EXPECT_EQ(r.best.dedicated_lanes, 1);
  EXPECT_NEAR(r.best.throughput, 7000.0, 1e-9);
  ASSERT_EQ(r.candidates.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.candidates[i].dedicated_lanes, i);

  r = optimize_allocation(make(2, 1500, Scenario::kConservative), PenetrationRate(0.5));
  EXPECT_EQ(r.best.dedicated_lanes, 0);
  EXPECT_EQ(r.best.throughput, 3000.0);

  r = optimize_allocation(make(2, 5000, Scenario::kAggressive), PenetrationRate(0.95));
  EXPECT_EQ(r.best.dedicated_lanes, 0);
  EXPECT_EQ(r.best.throughput, 10000.0);

  r = optimize_allocation(make(2, 5000, Scenario::kConservative), PenetrationRate(0.0));
  EXPECT_EQ(r.best.dedicated_lanes, 0);
  EXPECT_NEAR(r.best.throughput, 4000.0, 1e-9);

  EXPECT_THROW(optimize_allocation(make(1, 5000, Scenario::kNeutral), PenetrationRate(0.5)), DomainError);
}

TEST(OptimizeAllocation, TieBreaksTowardFewestLanes) {
  // Every allocation that keeps a mixed lane serves the full demand here.
  const auto r = optimize_allocation(make(4, 100, Scenario::kNeutral), PenetrationRate(0.5));
  for (int la = 0; la < 4; ++la) EXPECT_NEAR(r.candidates[la].throughput, 400.0, 1e-9);
  EXPECT_NEAR(r.candidates[4].throughput, 200.0, 1e-9);
  EXPECT_EQ(r.best.dedicated_lanes, 0);
  EXPECT_TRUE(throughput_tied(1e6, 1e6 + 1e-4));
  EXPECT_FALSE(throughput_tied(1e6, 1e6 + 1e-2));
}

TEST(OptimizeAllocation, MatchesIndependentEnumeration) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 3000; ++i) {
    const HeadwayProfile h = oracle::random_profile(rng);
    const int lanes = 2 + static_cast<int>(rng() % 7);
    const double demand = oracle::uniform(rng, 0.0, 20000.0);
    const double p = oracle::uniform(rng, 0.0, 1.0);
    const FreewayConfig cfg{lanes, demand, h, std::nullopt};
    const auto r = optimize_allocation(cfg, PenetrationRate(p));

    long double best = -1;
    for (int la = 0; la <= lanes; ++la) {
      const auto f = oracle::throughput(h, lanes, demand, 3600.0 / h.aa, p, la);
      EXPECT_NEAR(r.candidates[la].throughput, static_cast<double>(f.total), tol(r.candidates[la].throughput));
      EXPECT_NEAR(r.candidates[la].cav_lane_flow, static_cast<double>(f.q_a), tol(f.q_a));
      EXPECT_NEAR(r.candidates[la].mixed_lane_flow, static_cast<double>(f.q_mix), tol(f.q_mix));
      best = std::max(best, f.total);
    }
    EXPECT_NEAR(r.best.throughput, static_cast<double>(best), tol(static_cast<double>(best)));
    for (const auto& c : r.candidates) {
      EXPECT_GE(r.best.throughput, c.throughput - tol(c.throughput));
    }
  }
}

TEST(AllocationProperties, ConservationAtZeroPenetration) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    const HeadwayProfile h = oracle::random_profile(rng);
    const int lanes = 2 + static_cast<int>(rng() % 7);
    const double demand = oracle::uniform(rng, 0.0, 20000.0);
    const auto r = optimize_allocation({lanes, demand, h, std::nullopt}, PenetrationRate(0.0));
    EXPECT_EQ(r.best.dedicated_lanes, 0);
    const double expected = lanes * std::min(demand, 3600.0 / h.mm);
    EXPECT_NEAR(r.best.throughput, expected, tol(expected));
  }
}

TEST(AllocationProperties, CapacityCap) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 2000; ++i) {
    const HeadwayProfile h = oracle::random_profile(rng);
    const int lanes = 1 + static_cast<int>(rng() % 8);
    const FreewayConfig cfg{lanes, oracle::uniform(rng, 0.0, 20000.0), h, std::nullopt};
    const PenetrationRate p(oracle::uniform(rng, 0.0, 1.0));
    for (int la = 0; la <= lanes; ++la) {
      const auto e = evaluate_allocation(cfg, p, la);
      const double cap = (lanes - la) * e.mixed_lane_capacity + la * cfg.cav_lane_capacity();
      EXPECT_LE(e.throughput, cap + tol(cap));
      EXPECT_LE(e.cav_lane_flow, cfg.cav_lane_capacity() + tol(cfg.cav_lane_capacity()));
    }
  }
}

TEST(AllocationProperties, OptimumNonDecreasingInPenetrationAboveCapacity) {
  for (Scenario s : {Scenario::kNeutral, Scenario::kConservative, Scenario::kAggressive}) {
    for (int lanes : {2, 4, 6}) {
      const FreewayConfig cfg{lanes, 5050.0, preset_profile(s), std::nullopt};
      double previous = 0.0;
      for (int k = 0; k <= 100; ++k) {
        const double q = optimize_allocation(cfg, PenetrationRate(k / 100.0)).best.throughput;
        EXPECT_GE(q, previous - tol(previous)) << scenario_name(s) << " L=" << lanes << " p=" << k / 100.0;
        previous = q;
      }
    }
  }
}
