#include "oracles.hpp"

#include "tansec/asymptotic_estimator.hpp"
#include "tansec/errors.hpp"
#include "tansec/tangent_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tansec;

namespace {

MeasurementSeries synthetic(double alpha, const std::function<double(double)>& y) {
  MeasurementSeries s;
  s.alpha = alpha;
  for (double e : EpsilonGrid::geometric().values) {
    s.eps.push_back(e);
    s.values.push_back(y(e) * std::pow(e, alpha));
    s.errors.push_back(0.0);
  }
  return s;
}

AffineFlat north_flat(const RadialBody& body) {
  Vec u = Vec::Zero(body.dimension());
  u(body.dimension() - 1) = 1.0;
  return tangent_hyperplanes(body, u).front();
}

}  // namespace

TEST(EpsilonGrid, GeometricDefaults) {
  const EpsilonGrid g = EpsilonGrid::geometric();
  ASSERT_EQ(g.size(), 9);
  EXPECT_DOUBLE_EQ(g.values.front(), 1.0 / 64);
  EXPECT_DOUBLE_EQ(g.values.back(), std::ldexp(1.0, -14));
  EXPECT_NO_THROW(g.validate());
  EXPECT_THROW((EpsilonGrid{{0.1, 0.2, 0.05}}.validate()), Error);
  EXPECT_THROW((EpsilonGrid{{0.1, -0.2}}.validate()), Error);
}

TEST(ScalingExponent, SectionAndCapRules) {
  const FunctionalDescriptor v1{FunctionalKind::IntrinsicVolume, 1};
  const FunctionalDescriptor v3{FunctionalKind::IntrinsicVolume, 3};
  const FunctionalDescriptor john{FunctionalKind::JohnEllipsoidVolume, 3};
  const FunctionalDescriptor mw2{FunctionalKind::MeanWidthPower, 2};
  EXPECT_DOUBLE_EQ(scaling_exponent(SweepMode::Section, v1, 3), 0.5);
  EXPECT_DOUBLE_EQ(scaling_exponent(SweepMode::Cap, v3, 3), 2.0);
  EXPECT_DOUBLE_EQ(scaling_exponent(SweepMode::Cap, john, 3), 2.0);
  EXPECT_DOUBLE_EQ(scaling_exponent(SweepMode::Cap, v1, 3), 0.5);
  EXPECT_DOUBLE_EQ(scaling_exponent(SweepMode::Cap, mw2, 3), 1.0);
}

TEST(ExtractLimit, RecoversExactSqrtModel) {
  const LimitEstimate e = extract_limit(synthetic(0.5, [](double x) { return 2.0 - 0.3 * std::sqrt(x); }));
  EXPECT_NEAR(e.limit, 2.0, 1e-12);
  EXPECT_NEAR(e.correction, -0.3, 1e-10);
  EXPECT_FALSE(e.extended_model);
  EXPECT_FALSE(e.zero);
}

TEST(ExtractLimit, FallsBackToExtendedModel) {
  const LimitEstimate e =
      extract_limit(synthetic(1.0, [](double x) { return 1.0 + 2.0 * std::sqrt(x) + 40.0 * x; }), 1e-6, 1e-4);
  EXPECT_TRUE(e.extended_model);
  EXPECT_NEAR(e.limit, 1.0, 1e-9);
  EXPECT_NEAR(e.correction2, 40.0, 1e-6);
}

TEST(ExtractLimit, RejectsUnstructuredSeries) {
  const auto s = synthetic(1.0, [](double x) { return std::fmod(std::round(1.0 / x), 3.0) + 1.0; });
  EXPECT_THROW(extract_limit(s), PoorFit);
}

TEST(ExtractLimit, FlagsZeroLimit) {
  const LimitEstimate e = extract_limit(synthetic(1.0, [](double x) { return 1e-9 + 1e-9 * std::sqrt(x); }));
  EXPECT_TRUE(e.zero);
  EXPECT_DOUBLE_EQ(invert_limit(e, 1.0, 1.0), 0.0);
}

TEST(Inversion, SectionAndCapVolume) {
  LimitEstimate e;
  e.limit = 2.0;
  // chord limit 2 = c^{1/2} * V_1(E), V_1(E) = 2 sqrt(2) for the unit circle
  EXPECT_NEAR(invert_section_limit(e, 2.0 * std::sqrt(2.0), 1), 0.5, 1e-15);
  // unit disc, Q = 1/2: segment area ~ (4 sqrt 2 / 3) c^{3/2} eps^{3/2}
  e.limit = 4.0 * std::sqrt(2.0) / 3.0;
  EXPECT_NEAR(invert_cap_volume_limit(e, 0.5 * Mat::Identity(1, 1), 2), 1.0, 1e-14);
}

TEST(Sweep, ChordSeriesMatchesOracle) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(0.5));
  const AffineFlat flat = north_flat(fam.base());
  const FunctionalDescriptor v1{FunctionalKind::IntrinsicVolume, 1};
  const MeasurementSeries s = sweep(fam, flat, v1, EpsilonGrid::geometric(), SweepMode::Section);
  ASSERT_EQ(s.size(), 9);
  for (int i = 0; i < s.size(); ++i) EXPECT_NEAR(s.values[i], oracle::chord(1.0 + 0.5 * s.eps[i]), 1e-10);
  const LimitEstimate e = extract_limit(s);
  EXPECT_NEAR(e.limit, 2.0, 1e-3);
  EXPECT_NEAR(invert_section_limit(e, reference_value(SweepMode::Section, v1, flat), 1), 0.5, 5e-3);
}

TEST(Sweep, SegmentSeriesMatchesOracle) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(1.0));
  const AffineFlat flat = north_flat(fam.base());
  const MeasurementSeries s =
      sweep(fam, flat, {FunctionalKind::IntrinsicVolume, 2}, EpsilonGrid::geometric(), SweepMode::Cap);
  EXPECT_DOUBLE_EQ(s.alpha, 1.5);
  for (int i = 0; i < s.size(); ++i) {
    const double truth = oracle::circular_segment(1.0 + s.eps[i]);
    EXPECT_NEAR(s.values[i], truth, 1e-4 * truth);
  }
}

TEST(Sweep, DropsGridHeadBeyondThePatch) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(1.0));
  const AffineFlat flat = north_flat(fam.base());
  const FunctionalDescriptor area{FunctionalKind::IntrinsicVolume, 2};
  const MeasurementSeries s = sweep(fam, flat, area, EpsilonGrid::geometric(0.8, 0.5, 9), SweepMode::Cap);
  EXPECT_GT(s.dropped_head, 0);
  EXPECT_EQ(s.size() + s.dropped_head, 9);
  EXPECT_THROW(sweep(fam, flat, area, EpsilonGrid{{0.9, 0.85, 0.8, 0.75, 0.7}}, SweepMode::Cap), EpsilonTooLarge);
}

TEST(Sweep, SeededMonteCarloIsReproducible) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial::constant(1.0));
  const AffineFlat flat = north_flat(fam.base());
  SweepOptions opt;
  opt.sampling.force_monte_carlo = true;
  opt.sampling.mc_rays = 2048;
  opt.seed = 99;
  const FunctionalDescriptor v1{FunctionalKind::IntrinsicVolume, 1};
  const auto a = sweep(fam, flat, v1, EpsilonGrid::geometric(), SweepMode::Section, opt);
  const auto b = sweep(fam, flat, v1, EpsilonGrid::geometric(), SweepMode::Section, opt);
  EXPECT_EQ(a.values, b.values);
}
