#include "tansec/errors.hpp"
#include "tansec/recovery.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tansec;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

RecoveryOptions section_options(int k) {
  RecoveryOptions o;
  o.functional = {FunctionalKind::IntrinsicVolume, k};
  return o;
}

}  // namespace

TEST(RecoverField, ConstantSpeedOnDisc) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(0.5));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(2, 8).directions);
  const RecoveryReport r = recover_field(fam, flats, section_options(1));
  ASSERT_EQ(r.samples.size(), 8u);
  EXPECT_LT(r.rms_error, 0.01);
  EXPECT_TRUE(r.reliability_ok);
  for (const auto& s : r.samples) EXPECT_NEAR(s.c_hat, 0.5, 5e-3);
}

TEST(RecoverField, ThreadCountDoesNotChangeResults) {
  const PerturbationFamily fam(RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5)), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(3, 6).directions);
  RecoveryOptions one = section_options(2);
  RecoveryOptions three = one;
  three.jobs = 3;
  const RecoveryReport a = recover_field(fam, flats, one);
  const RecoveryReport b = recover_field(fam, flats, three);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].flat_id, b.samples[i].flat_id);
    EXPECT_EQ(a.samples[i].c_hat, b.samples[i].c_hat);
  }
}

TEST(RecoverField, FieldFromSyntheticLimits) {
  const RadialBody ball = RadialBody::ball(2);
  const auto flats = tangent_hyperplanes(ball, direction_grid(2, 4).directions);
  std::vector<LimitEstimate> limits(flats.size());
  for (auto& l : limits) l.limit = 2.0;
  const RecoveryReport r = field_from_limits(flats, limits, section_options(1));
  for (const auto& s : r.samples) EXPECT_NEAR(s.c_hat, 0.5, 1e-14);
}

TEST(RecoverField, CapModeNeedsHyperplanes) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial::constant(1.0));
  const auto flats = tangent_flats(fam.base(), 1, SubspacePencil::about(vec3(0, 0, 1), 4), 2);
  RecoveryOptions o;
  o.mode = RecoveryMode::CapVolume;
  o.functional = {FunctionalKind::IntrinsicVolume, 3};
  EXPECT_THROW(recover_field(fam, flats, o), DimensionMismatch);
}

TEST(Symmetry, EvenPerturbationPassesInversion) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const Mat dirs = close_under(direction_grid(3, 12).directions, -Mat::Identity(3, 3));
  const RecoveryReport r = recover_field(fam, tangent_hyperplanes(fam.base(), dirs), section_options(2));
  const SymmetryCertificate c = symmetry_check(r, fam.base(), -Mat::Identity(3, 3));
  EXPECT_EQ(c.unmatched, 0);
  EXPECT_TRUE(c.pass);
  EXPECT_TRUE(c.even);
}

TEST(Symmetry, OddPerturbationFailsInversion) {
  const PerturbationFamily fam(RadialBody::ball(3), Polynomial({{0.2, {}}, {0.1, {1}}}));
  const Mat dirs = close_under(direction_grid(3, 12).directions, -Mat::Identity(3, 3));
  const RecoveryReport r = recover_field(fam, tangent_hyperplanes(fam.base(), dirs), section_options(2));
  const SymmetryCertificate c = symmetry_check(r, fam.base(), -Mat::Identity(3, 3));
  EXPECT_FALSE(c.pass);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    EXPECT_NEAR(c.defects[i], 0.2 * std::abs(r.samples[i].direction(0)), 2e-3);
  }
}

TEST(Symmetry, RejectsTransformThatMovesTheBody) {
  const PerturbationFamily fam(RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5)), Polynomial::constant(0.3));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(3, 4).directions);
  const RecoveryReport r = field_from_limits(flats, std::vector<LimitEstimate>(flats.size()), section_options(2));
  Mat swap = Mat::Zero(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = 1.0;
  EXPECT_THROW(symmetry_check(r, fam.base(), swap), NotASymmetryOfK);
}

TEST(Santalo, ConstantChordLimitsGiveConstantField) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial::constant(0.4));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(2, 8).directions);
  const SantaloResult s = santalo_first_order(recover_field(fam, flats, section_options(1)));
  EXPECT_TRUE(s.applicable);
  EXPECT_TRUE(s.holds);
}

TEST(Santalo, VaryingLimitsAreNotApplicable) {
  const PerturbationFamily fam(RadialBody::ball(2), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const auto flats = tangent_hyperplanes(fam.base(), direction_grid(2, 8).directions);
  EXPECT_FALSE(santalo_first_order(recover_field(fam, flats, section_options(1))).applicable);
}
