#include <uavcov/oracle.hpp>

#include "support/brute.hpp"
#include "support/frozen.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

using namespace uavcov;

namespace {

CorridorScenario at(double alpha_deg, double beta_deg = 40.0) {
  return default_scenario(deg_to_rad(alpha_deg), deg_to_rad(beta_deg));
}

}  // namespace

TEST(PointSinr, MatchesIndependentImplementation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 500.0);
  std::uniform_real_distribution<double> uz(100.0, 300.0);
  for (double a : {4.0, 8.0, 13.0, 25.0}) {
    const auto s = at(a);
    const PointEvaluator ev(s, OracleAssumptions::matched());
    const brute::Setup b{1000.0, a, 40.0, true};
    for (int k = 0; k < 1000; ++k) {
      const double x = ux(rng);
      const double z = uz(rng);
      const double got = ev.evaluate(x, z).sinr;
      const double want = brute::sinr(b, x, z);
      EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, want)) << "x=" << x << " z=" << z;
    }
  }
}

TEST(PointSinr, StrongestDominatesNearestPointwise) {
  for (auto mode : {InterferenceMode::DominantOnly, InterferenceMode::SumAll}) {
    OracleAssumptions a;
    a.interference = mode;
    for (double alpha = 2.0; alpha <= 38.0; alpha += 4.0) {
      const PointEvaluator ev(at(alpha), a);
      for (double x = 1.0; x < 500.0; x += 7.0)
        for (double z = 101.0; z < 300.0; z += 7.0)
          EXPECT_GE(ev.evaluate(x, z, {}, Association::Strongest).sinr,
                    ev.evaluate(x, z, {}, Association::Nearest).sinr);
    }
  }
}

TEST(PointSinr, AllUnlitServesNearestWithZero) {
  CorridorScenario s = at(0.5, 4.0);
  OracleAssumptions a;
  a.bs_positions = {0.0, 1000.0};
  const auto p = point_sinr(120.0, 150.0, s, a);
  EXPECT_EQ(p.serving, 0u);
  EXPECT_EQ(p.sinr, 0.0);
  EXPECT_EQ(point_sinr(900.0, 150.0, s, a).serving, 1u);
  EXPECT_EQ(coverage_by_quadrature(s, a, 64, 64), 0.0);
}

TEST(PointSinr, NoiseFreeEqualGainIsDistanceRatio) {
  OracleAssumptions a;
  a.include_noise = false;
  const auto s = at(8.0);
  const auto p = point_sinr(300.0, 200.0, s, a);
  EXPECT_EQ(p.serving, 1u);
  EXPECT_NEAR(p.sinr, simplified_sinr(300.0, 200.0, 0.0, 1000.0), 1e-9);
}

TEST(Assumptions, PositionValidation) {
  OracleAssumptions a;
  a.bs_positions = {0.0};
  EXPECT_THROW(a.positions(at(13.0)), DomainError);
  a.bs_positions = {0.0, 0.0};
  EXPECT_THROW(a.positions(at(13.0)), DomainError);
  EXPECT_EQ(OracleAssumptions{}.positions(at(13.0)), (std::vector<double>{-1000.0, 0.0, 1000.0, 2000.0}));
}

TEST(Quadrature, FrozenReferenceValues) {
  const auto m = OracleAssumptions::matched();
  EXPECT_NEAR(coverage_by_quadrature(at(13.0), m, 2001, 2001), frozen::kQuadPinAlpha13, 1e-12);
  EXPECT_NEAR(coverage_by_quadrature(at(35.0), m, 2001, 2001), frozen::kQuadPinAlpha35, 1e-12);
}

TEST(Quadrature, RefinementIsStable) {
  for (double a : {8.0, 13.0, 17.0, 25.0}) {
    const auto r = quadrature_with_refinement(at(a), OracleAssumptions::matched(), 400, 400);
    EXPECT_LT(r.delta, 0.005) << "alpha=" << a;
  }
}

TEST(Quadrature, WorkerCountDoesNotChangeResult) {
  const auto m = OracleAssumptions::matched();
  EXPECT_EQ(coverage_by_quadrature(at(13.0), m, 300, 300, 1), coverage_by_quadrature(at(13.0), m, 300, 300, 8));
}

TEST(Quadrature, RejectsCoarseGrid) {
  EXPECT_THROW(coverage_by_quadrature(at(13.0), {}, 10, 100), DomainError);
}

TEST(Quadrature, RealisticModelsStayInUnitInterval) {
  OracleAssumptions a;
  a.beam.kind = BeamShape::Kind::Cosine;
  a.pathloss = AirToGround{};
  a.interference = InterferenceMode::SumAll;
  for (double alpha : {5.0, 15.0, 30.0}) {
    const double p = coverage_by_quadrature(at(alpha), a, 128, 128);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(Quadrature, DowntiltAllowedForNumericalEvaluators) {
  const double p = coverage_by_quadrature(at(-5.0, 40.0), {}, 128, 128);
  EXPECT_GE(p, 0.0);
  EXPECT_LE(p, 1.0);
}
