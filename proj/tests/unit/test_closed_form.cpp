#include <uavcov/closed_form.hpp>

#include "support/frozen.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>

using namespace uavcov;

namespace {

CorridorScenario at(double alpha_deg, double beta_deg = 40.0) {
  return default_scenario(deg_to_rad(alpha_deg), deg_to_rad(beta_deg));
}

const ClosedFormOptions kExpressionOnly{Case1Wedge::ExpressionOnly, std::nullopt};

}  // namespace

TEST(ClosedForm, CaseExpressionReference) {
  EXPECT_NEAR(outage(at(4.0), kExpressionOnly).p_in, frozen::kPinAlpha4, 1e-9);
  EXPECT_NEAR(outage(at(8.0)).p_in, frozen::kPinAlpha8, 1e-9);
  EXPECT_NEAR(outage(at(13.0)).p_in, frozen::kPinAlpha13, 1e-9);
  EXPECT_NEAR(outage(at(17.0)).p_in, frozen::kPinAlpha17, 1e-9);
  EXPECT_NEAR(outage(at(25.0)).p_in, frozen::kPinAlpha25, 1e-9);
  EXPECT_NEAR(outage(at(35.0)).p_in, frozen::kPinAlpha35, 1e-9);
}

TEST(ClosedForm, CaseSixIsTheLobeStrip) {
  for (double a : {32.0, 35.0, 40.0, 45.0}) {
    const auto s = at(a);
    const auto r = outage(s);
    ASSERT_EQ(r.case_id, CaseId::Six);
    const double expect = (s.h2 + s.h1) / s.d1 * (cot(s.alpha) - cot(s.alpha + s.beta));
    EXPECT_NEAR(r.p_in, expect, 1e-12);
    EXPECT_NEAR(r.p_out, 1.0 - expect, 1e-12);
  }
}

TEST(ClosedForm, AgreesWithFrozenQuadrature) {
  EXPECT_NEAR(outage(at(13.0)).p_in, frozen::kQuadPinAlpha13, 0.02);
  EXPECT_NEAR(outage(at(35.0)).p_in, frozen::kQuadPinAlpha35, 0.02);
}

TEST(ClosedForm, WedgeTermReference) {
  EXPECT_NEAR(case1_bs2_wedge_coverage(at(6.0, 30.0)), frozen::kWedgeAlpha6Beta30, 1e-6);
  EXPECT_NEAR(case1_bs2_wedge_coverage(at(6.0, 40.0)), frozen::kWedgeAlpha6Beta40, 1e-6);
  // below d1 tan(alpha) = h1 the wedge lies under the corridor
  EXPECT_EQ(case1_bs2_wedge_coverage(at(4.0)), 0.0);
}

TEST(ClosedForm, WedgeIncludedOnlyInCaseOne) {
  const auto inc = outage(at(6.0, 30.0));
  const auto pr = outage(at(6.0, 30.0), kExpressionOnly);
  ASSERT_EQ(inc.case_id, CaseId::One);
  EXPECT_NEAR(inc.p_in - pr.p_in, frozen::kWedgeAlpha6Beta30, 1e-6);
  EXPECT_EQ(inc.p_in_expression, pr.p_in_expression);
  EXPECT_EQ(outage(at(13.0)).wedge_term, 0.0);
}

TEST(ClosedForm, BandAreaMatchesNumericIntegral) {
  using detail::Line;
  const std::array<Line, 2> up{Line{400.0, -0.5}, Line{100.0, 1.0}};
  const std::array<Line, 2> lo{Line{0.0, 0.2}, Line{250.0, -1.0}};
  const double exact = detail::band_area(up, lo, 0.0, 300.0);
  const int n = 300000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double h = (k + 0.5) * 300.0 / n;
    const double u = std::min(up[0].at(h), up[1].at(h));
    const double w = std::max(lo[0].at(h), lo[1].at(h));
    sum += std::max(0.0, u - w);
  }
  EXPECT_NEAR(exact, sum * 300.0 / n, 1e-6);
  EXPECT_EQ(detail::band_area(up, lo, 5.0, 5.0), 0.0);
}

TEST(ClosedForm, ProbabilitiesInUnitIntervalAcrossSweep) {
  for (double beta : {30.0, 40.0}) {
    for (double a = 1.0; a <= 38.0; a += 0.25) {
      const auto r = outage(at(a, beta));
      EXPECT_GE(r.p_in, 0.0);
      EXPECT_LE(r.p_in, 1.0);
      EXPECT_NEAR(r.p_in + r.p_out, 1.0, 1e-15);
    }
  }
}

TEST(ClosedForm, OverrideIsFlagged) {
  ClosedFormOptions o;
  o.case_override = CaseId::Five;
  const auto r = outage(at(13.0), o);
  EXPECT_EQ(r.case_id, CaseId::Five);
  EXPECT_TRUE(r.case_overridden);
  EXPECT_FALSE(r.diagnostics.empty());
  o.case_override = CaseId::Three;
  EXPECT_FALSE(outage(at(13.0), o).case_overridden);
}

TEST(ClosedForm, Preconditions) {
  EXPECT_THROW(outage(at(0.0)), PreconditionViolation);
  EXPECT_THROW(outage(at(-3.0)), PreconditionViolation);
  auto s = at(13.0);
  s.tau = db_to_linear(-1.0);
  EXPECT_THROW(outage(s), TauOutOfRange);
}

TEST(ClosedForm, NonFiniteTermNamesTheTerm) {
  detail::TermSum t;
  t.add("fine", 1.0);
  try {
    t.add("broken", std::numeric_limits<double>::quiet_NaN());
    FAIL() << "expected NonFiniteTerm";
  } catch (const NonFiniteTerm& e) {
    EXPECT_EQ(e.term(), "broken");
  }
}

TEST(ClosedForm, ResultCarriesIntermediates) {
  const auto r = outage(at(13.0));
  EXPECT_NEAR(r.crossing.h3, frozen::kH3Alpha13, 1e-6);
  EXPECT_NEAR(r.borders.d2, frozen::kD2, 1e-6);
  EXPECT_NEAR(r.corners.hc6, frozen::kHc6Alpha13, 1e-6);
  EXPECT_FALSE(r.clamped);
}
