#include "oracles.hpp"

#include "tansec/convex_measures.hpp"
#include "tansec/convex_sample.hpp"
#include "tansec/errors.hpp"
#include "tansec/john_ellipsoid.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tansec;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

AffineFlat north_flat(const RadialBody& body) {
  const int d = body.dimension();
  Vec u = Vec::Zero(d);
  u(d - 1) = 1.0;
  return tangent_hyperplanes(body, u).front();
}

}  // namespace

TEST(EllipsoidIntrinsicVolume, EllipsePerimeterOracle) {
  const auto e = EllipsoidSpec::axis_aligned(vec2(2.0, 1.0));
  EXPECT_NEAR(ellipsoid_intrinsic_volume(e, 1), 0.5 * oracle::ellipse_perimeter(2.0, 1.0), 1e-9);
  EXPECT_NEAR(ellipsoid_intrinsic_volume(e, 1), 4.844224110273838, 1e-9);
  EXPECT_NEAR(ellipsoid_intrinsic_volume(e, 2), 2.0 * std::numbers::pi, 1e-12);
}

TEST(EllipsoidIntrinsicVolume, SpheroidSurfaceOracle) {
  const auto e = EllipsoidSpec::axis_aligned(vec3(1.0, 1.0, 1.5));
  EXPECT_NEAR(ellipsoid_intrinsic_volume(e, 2), 0.5 * oracle::prolate_spheroid_area(1.0, 1.5), 1e-6);
}

TEST(EllipsoidIntrinsicVolume, BallValues) {
  for (int m = 2; m <= 3; ++m) {
    const auto e = EllipsoidSpec::axis_aligned(Vec::Ones(m));
    for (int k = 1; k <= m; ++k) {
      const double truth = binomial(m, k) * unit_ball_volume(m) / unit_ball_volume(m - k);
      EXPECT_NEAR(ellipsoid_intrinsic_volume(e, k), truth, 1e-9 * truth) << "m=" << m << " k=" << k;
    }
  }
}

TEST(SampledMeasures, EllipseSampleMatchesClosedForm) {
  const EllipsoidSpec spec{Vec::Zero(2), vec2(2.0, 1.0), Mat::Identity(2, 2)};
  const ConvexSample s = ellipsoid_sample(spec);
  EXPECT_NEAR(intrinsic_volume(s, 2).value, 2.0 * std::numbers::pi, 2e-4 * 2.0 * std::numbers::pi);
  EXPECT_NEAR(intrinsic_volume(s, 1).value, 4.844224110273838, 2e-4 * 4.84);
}

TEST(SampledMeasures, SectionOfPerturbedBallIsAChord) {
  const double c = 0.5;
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(c));
  const auto flat = north_flat(fam.base());
  for (double eps : {1.0 / 64, 1.0 / 1024}) {
    const ConvexSample s = section_body(fam, flat, eps);
    EXPECT_NEAR(intrinsic_volume(s, 1).value, oracle::chord(1.0 + c * eps), 1e-10);
  }
}

TEST(SampledMeasures, SectionOfPerturbedBallIsADisc) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial::constant(1.0));
  const ConvexSample s = section_body(fam, north_flat(fam.base()), 1.0 / 256);
  const double truth = oracle::section_disc_area(1.0 + 1.0 / 256);
  EXPECT_NEAR(intrinsic_volume(s, 2).value, truth, 1e-3 * truth);
}

TEST(SampledMeasures, CapOfPerturbedDiscIsASegment) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(1.0));
  const double eps = 1.0 / 128;
  const ConvexSample s = cap_body(fam, north_flat(fam.base()), eps);
  const double R = 1.0 + eps;
  EXPECT_NEAR(intrinsic_volume(s, 2).value, oracle::circular_segment(R), 1e-4 * oracle::circular_segment(R));
  EXPECT_NEAR(intrinsic_volume(s, 1).value, oracle::circular_segment_half_perimeter(R),
              1e-4 * oracle::circular_segment_half_perimeter(R));
}

TEST(SampledMeasures, CapOfPerturbedBallIsASphericalCap) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial::constant(1.0));
  const double eps = 1.0 / 128;
  const ConvexSample s = cap_body(fam, north_flat(fam.base()), eps);
  const double R = 1.0 + eps;
  const double vol = oracle::spherical_cap_volume(R, eps);
  const double half_area = 0.5 * oracle::spherical_cap_surface(R, eps);
  EXPECT_NEAR(intrinsic_volume(s, 3).value, vol, 5e-3 * vol);
  EXPECT_NEAR(intrinsic_volume(s, 2).value, half_area, 5e-3 * half_area);
}

TEST(SampledMeasures, PatchOverflowIsReported) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(1.0));
  EXPECT_THROW(cap_body(fam, north_flat(fam.base()), 0.6), EpsilonTooLarge);
}

TEST(SampledMeasures, MonteCarloSchemeAgreesWithExact) {
  const EllipsoidSpec spec{Vec::Zero(3), vec3(1.0, 1.2, 1.5), Mat::Identity(3, 3)};
  SamplingOptions so;
  so.force_monte_carlo = true;
  so.mc_rays = 16384;
  so.seed = 5;
  const ConvexSample s = ellipsoid_sample(spec, so);
  for (int k = 1; k <= 3; ++k) {
    const double truth = ellipsoid_intrinsic_volume(spec, k);
    EXPECT_NEAR(intrinsic_volume(s, k).value, truth, 0.01 * truth) << "k=" << k;
  }
}

TEST(SampledMeasures, ConvexitySpotCheckOnBall) {
  const EllipsoidSpec spec = EllipsoidSpec::axis_aligned(Vec::Ones(3));
  const ConvexSample s = ellipsoid_sample(spec);
  auto inside = [](const Vec& x) { return 1.0 + 1e-9 - x.norm(); };
  EXPECT_LE(convexity_spot_check(s, inside, 200, 3), 0.0);
  // A shell with a hollow core fails: chords through the core leave the set.
  auto shell = [](const Vec& x) { return std::min(1.0 + 1e-9 - x.norm(), x.norm() - 0.5); };
  EXPECT_GT(convexity_spot_check(s, shell, 200, 3), 0.0);
}

TEST(Functionals, DescriptorValidation) {
  EXPECT_THROW((FunctionalDescriptor{FunctionalKind::IntrinsicVolume, 4}.validate(3)), DimensionMismatch);
  EXPECT_THROW((FunctionalDescriptor{FunctionalKind::JohnEllipsoidVolume, 2}.validate(3)), UnsupportedCombination);
  EXPECT_TRUE((FunctionalDescriptor{FunctionalKind::IntrinsicVolume, 3}.volume_type(3)));
  EXPECT_TRUE((FunctionalDescriptor{FunctionalKind::JohnEllipsoidVolume, 2}.volume_type(2)));
  EXPECT_FALSE((FunctionalDescriptor{FunctionalKind::MeanWidthPower, 2}.volume_type(2)));
  EXPECT_EQ(parse_functional_kind("john"), FunctionalKind::JohnEllipsoidVolume);
  EXPECT_THROW(parse_functional_kind("surface"), UnsupportedCombination);
}

TEST(Functionals, MeanWidthPowerOfBall) {
  // V_1(B^3) = 4.
  const ConvexSample s = ellipsoid_sample(EllipsoidSpec::axis_aligned(Vec::Ones(3)));
  EXPECT_NEAR(functional_value(s, {FunctionalKind::MeanWidthPower, 2}).value, 16.0, 16.0 * 2e-3);
  EXPECT_NEAR(functional_value(s, {FunctionalKind::MeanWidthPower, 3}).value, 64.0, 64.0 * 3e-3);
}

TEST(Functionals, JohnEllipsoidOfEllipseIsItself) {
  const EllipsoidSpec spec{Vec::Zero(2), vec2(2.0, 1.0), Mat::Identity(2, 2)};
  const FunctionalDescriptor f{FunctionalKind::JohnEllipsoidVolume, 2};
  const double sampled = functional_value(ellipsoid_sample(spec), f).value;
  EXPECT_NEAR(sampled, 2.0 * std::numbers::pi, 2e-3 * 2.0 * std::numbers::pi);
  EXPECT_NEAR(functional_of_ellipsoid(spec, f), 2.0 * std::numbers::pi, 1e-12);
}

TEST(JohnEllipsoid, SquareGivesInscribedDisc) {
  Mat sq(2, 4);
  sq << 1, -1, -1, 1, 1, 1, -1, -1;
  const InscribedEllipsoid e = max_inscribed_ellipsoid(sq);
  EXPECT_NEAR(e.volume, std::numbers::pi, 1e-5);
  EXPECT_NEAR(e.center.norm(), 0.0, 1e-6);
}

TEST(JohnEllipsoid, CubeGivesInscribedBall) {
  Mat cube(3, 8);
  for (int i = 0; i < 8; ++i) cube.col(i) << (i & 1 ? 1 : -1), (i & 2 ? 1 : -1), (i & 4 ? 1 : -1);
  EXPECT_NEAR(max_inscribed_ellipsoid(cube).volume, 4.0 * std::numbers::pi / 3.0, 1e-5);
}

TEST(JohnEllipsoid, SegmentIsItsOwnEllipsoid) {
  Mat seg(1, 5);
  seg << -0.3, 0.1, 0.9, 0.2, -0.1;
  const InscribedEllipsoid e = max_inscribed_ellipsoid(seg);
  EXPECT_NEAR(e.volume, 1.2, 1e-9);
}

TEST(Sandwich, ChordLiesBetweenScaledIndicatrices) {
  const double c = 0.5;
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(c));
  const AffineFlat flat = north_flat(fam.base());
  const double eps = std::ldexp(1.0, -10);
  const ConvexSample s = section_body(fam, flat, eps);
  EXPECT_TRUE(sandwich_check(s, dupin_hull(flat.frame), 0.8 * c, 1.25 * c, eps).holds);
  EXPECT_FALSE(sandwich_check(s, dupin_hull(flat.frame), 1.1 * c, 1.25 * c, eps).holds);
}

TEST(ParaboloidCap, VolumeAsymptoteForBall) {
  // Ball radius 1: Q = I/2, cap volume ~ pi (c eps)^2 for d = 3.
  const Mat Q = 0.5 * Mat::Identity(2, 2);
  EXPECT_NEAR(cap_volume_asymptote(Q, 1.0, 0.01), std::numbers::pi * 1e-4, 1e-15);
  EXPECT_NEAR(paraboloid_cap_ratio(Q, 1.0, 0.01), 0.5, 1e-9);
}
