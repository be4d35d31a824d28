#include "oracles.hpp"

#include "tansec/body_models.hpp"
#include "tansec/errors.hpp"
#include "tansec/sphere.hpp"

#include <gtest/gtest.h>

#include <cmath>

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

Polynomial quadratic_bump() { return Polynomial({{0.3, {}}, {0.1, {2}}}); }

}  // namespace

TEST(UnitVector, RejectsNonUnitInput) {
  EXPECT_THROW(UnitVector(vec2(1.0, 1.0)), DimensionMismatch);
  EXPECT_NO_THROW(UnitVector(vec2(0.6, 0.8)));
  EXPECT_NEAR(UnitVector::normalized(vec2(3.0, 4.0))[1], 0.8, 1e-15);
}

TEST(Polynomial, EvaluatesAndDifferentiates) {
  const Polynomial p({{2.0, {1, 2}}, {-1.0, {0, 0, 3}}, {0.5, {}}});
  const Vec x = vec3(0.3, -0.7, 1.1);
  EXPECT_NEAR(p(x), 2.0 * 0.3 * 0.49 - std::pow(1.1, 3) + 0.5, 1e-14);
  const Vec g = p.gradient(x);
  EXPECT_NEAR(g(0), 2.0 * 0.49, 1e-14);
  EXPECT_NEAR(g(1), 2.0 * 0.3 * 2.0 * -0.7, 1e-14);
  EXPECT_NEAR(g(2), -3.0 * 1.21, 1e-14);
}

TEST(RadialBody, BallAndEllipsoidRadialFunctions) {
  const RadialBody ball = RadialBody::ball(3, 2.5);
  EXPECT_DOUBLE_EQ(ball.radial(vec3(0, 0, 1)), 2.5);

  const RadialBody ell = RadialBody::ellipsoid(vec2(2.0, 1.0));
  const double s = std::sqrt(0.5);
  EXPECT_NEAR(ell.radial(vec2(s, s)), 1.0 / std::sqrt(0.5 / 4.0 + 0.5), 1e-14);
  EXPECT_NEAR(ell.gap(vec2(1.9, 0.0)), 0.1, 1e-14);
  EXPECT_NEAR(ell.gap(vec2(0.0, 1.1)), -0.1, 1e-14);
}

TEST(RadialBody, RotationMovesTheBody) {
  Mat T(2, 2);
  T << 0, -1, 1, 0;
  const RadialBody ell = RadialBody::ellipsoid(vec2(2.0, 1.0)).rotated(T);
  EXPECT_NEAR(ell.radial(vec2(0.0, 1.0)), 2.0, 1e-14);
  EXPECT_NEAR(ell.radial(vec2(1.0, 0.0)), 1.0, 1e-14);
}

TEST(RadialBody, SmoothStarRejectsNonConvexTerms) {
  EXPECT_NO_THROW(RadialBody::smooth_star(2, 1.0, Polynomial(std::vector<Monomial>{{0.05, {2}}})));
  EXPECT_THROW(RadialBody::smooth_star(2, 1.0, Polynomial({{3.0, {4}}, {-3.0, {2, 2}}})), NonConvexPoint);
}

TEST(PerturbationFamily, RadialIsLinearInTime) {
  const PerturbationFamily fam(RadialBody::ball(3), quadratic_bump());
  const Vec u = vec3(0.6, 0.0, 0.8);
  EXPECT_NEAR(fam.radial(0.2, u), 1.0 + 0.2 * (0.3 + 0.1 * 0.36), 1e-15);
  EXPECT_NEAR(fam.rate(u), 0.3 + 0.1 * 0.36, 1e-15);
}

TEST(PerturbationFamily, RejectsNegativeSpeed) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial({{0.1, {}}, {-0.5, {1}}}));
  EXPECT_THROW(fam.validate(direction_grid(2, 64).directions), NegativeSpeed);
}

TEST(BoundaryFrame, BallFormIsHalfTheCurvature) {
  const double R = 1.7;
  const BoundaryFrame f = boundary_frame(RadialBody::ball(3, R), UnitVector(vec3(0, 0, 1)));
  EXPECT_NEAR((f.form - Mat::Identity(2, 2) / (2.0 * R)).norm(), 0.0, 1e-12);
  EXPECT_NEAR(f.obliquity(), 1.0, 1e-14);
}

TEST(BoundaryFrame, EllipseFormMatchesCurvatureOracle) {
  const double a = 2.0, b = 1.0;
  const RadialBody ell = RadialBody::ellipsoid(vec2(a, b));
  for (double s : {0.0, 0.4, 1.1, 2.5}) {
    const Vec x = vec2(a * std::cos(s), b * std::sin(s));
    const BoundaryFrame f = boundary_frame(ell, UnitVector::normalized(x));
    EXPECT_NEAR(f.form(0, 0), 0.5 * oracle::ellipse_curvature(a, b, s), 1e-10) << "s=" << s;
    const Vec nu = vec2(x(0) / (a * a), x(1) / (b * b)).normalized();
    EXPECT_NEAR((f.normal - nu).norm(), 0.0, 1e-12);
  }
}

TEST(BoundaryFrame, FiniteDifferenceAgreesWithAnalytic) {
  const RadialBody ell = RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5));
  const UnitVector u = UnitVector::normalized(vec3(0.3, -0.5, 0.8));
  const BoundaryFrame a = boundary_frame(ell, u);
  const BoundaryFrame fd = boundary_frame(ell, u, FrameMethod::FiniteDifference);
  EXPECT_LT((a.form - fd.form).norm(), 1e-5 * a.form.norm());
}

TEST(BoundaryFrame, GraphHeightMatchesSphereOracle) {
  const double R = 1.3;
  const RadialBody ball = RadialBody::ball(3, R);
  const BoundaryFrame f = boundary_frame(ball, UnitVector(vec3(0, 0, 1)));
  for (double r : {0.01, 0.1, 0.4}) {
    const Vec z = vec2(r * 0.6, r * 0.8);
    EXPECT_NEAR(graph_height(ball, f, z), R - std::sqrt(R * R - r * r), 1e-11);
  }
}

TEST(GroundTruth, NormalSpeedOnEllipse) {
  const double a = 2.0, b = 1.0;
  const PerturbationFamily fam(RadialBody::ellipsoid(vec2(a, b)), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const double s = std::sqrt(0.5);
  const Vec u = vec2(s, s);
  // c = d/dt of the support-like offset of the boundary along the normal.
  const double h = 1e-6;
  auto boundary = [&](double t) { return Vec(fam.radial(t, u) * u); };
  const Vec x = boundary(0.0);
  const Vec nu = vec2(x(0) / (a * a), x(1) / (b * b)).normalized();
  const double fd = (boundary(h) - boundary(-h)).dot(nu) / (2.0 * h);
  EXPECT_NEAR(ground_truth_c(fam, UnitVector(u)), fd, 1e-8);
}

TEST(GroundTruth, RadialDerivativeInvertsNormalSpeed) {
  const PerturbationFamily fam(RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5)), quadratic_bump());
  const UnitVector u = UnitVector::normalized(vec3(0.2, 0.9, -0.4));
  const BoundaryFrame f = boundary_frame(fam.base(), u);
  EXPECT_NEAR(radial_derivative_from_c(f, ground_truth_c(fam, f)), fam.rate(u.vec()), 1e-12);
}

TEST(DupinForm, SupportOfHull) {
  Mat Q(2, 2);
  Q << 0.5, 0.1, 0.1, 0.8;
  const DupinForm d = dupin_hull(Q);
  // h_E(theta) = sqrt(theta^T Q^{-1} theta)
  const Mat qi = Q.inverse();
  for (double t : {0.0, 0.7, 2.1}) {
    const Vec th = vec2(std::cos(t), std::sin(t));
    EXPECT_NEAR(d.support(th), std::sqrt(th.dot(qi * th)), 1e-12);
  }
}
