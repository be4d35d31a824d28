#include "tansec/properties.hpp"
#include "tansec/recovery.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tansec;

namespace {

void expect_all_pass(const std::vector<PropertyResult>& results) {
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.pass) << r.name << ": worst " << r.worst << " tolerance " << r.tolerance;
}

Mat random_rotation(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = n(rng);
  return orthonormalize(g);
}

RecoveryOptions sections(int k) {
  RecoveryOptions o;
  o.functional = {FunctionalKind::IntrinsicVolume, k};
  return o;
}

}  // namespace

TEST(Properties, SandwichInclusion) { expect_all_pass(sandwich_properties()); }
TEST(Properties, ParaboloidCapRatio) { expect_all_pass(paraboloid_ratio_properties()); }
TEST(Properties, Homogeneity) { expect_all_pass(homogeneity_properties(21)); }
TEST(Properties, Monotonicity) { expect_all_pass(monotonicity_properties(22)); }
TEST(Properties, Steiner) { expect_all_pass(steiner_properties()); }
TEST(Properties, Embedding) { expect_all_pass(embedding_properties(23)); }

TEST(Properties, ParallelBodyOfBallIsALargerBall) {
  const double r = 0.25;
  EXPECT_NEAR(parallel_body_volume(EllipsoidSpec::axis_aligned(Vec::Ones(3)), r), unit_ball_volume(3) * std::pow(1 + r, 3),
              1e-9);
}

TEST(Properties, RecoveryIsRotationEquivariant) {
  Vec semi(3);
  semi << 1.0, 1.2, 1.5;
  const PerturbationFamily fam(RadialBody::ellipsoid(semi), Polynomial({{0.3, {}}, {0.1, {2}}}));
  const Mat dirs = direction_grid(3, 5).directions;
  for (std::uint64_t seed : {1u, 2u}) {
    const Mat T = random_rotation(3, seed);
    const PerturbationFamily moved = fam.rotated(T);
    const RecoveryReport a = recover_field(fam, tangent_hyperplanes(fam.base(), dirs), sections(2));
    const RecoveryReport b = recover_field(moved, tangent_hyperplanes(moved.base(), T * dirs), sections(2));
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      EXPECT_NEAR(a.samples[i].c_hat, b.samples[i].c_hat, 2e-3 * a.samples[i].c_hat) << "seed " << seed;
    }
  }
}

TEST(Properties, RecoveredSpeedIsLinearInTheRate) {
  const auto dirs = direction_grid(2, 6).directions;
  for (double c : {0.1, 0.7, 2.0}) {
    const PerturbationFamily fam(RadialBody::ball(2, 1.3), Polynomial::constant(c));
    const RecoveryReport r = recover_field(fam, tangent_hyperplanes(fam.base(), dirs), sections(1));
    for (const auto& s : r.samples) EXPECT_NEAR(s.c_hat / c, 1.0, 1e-2);
  }
}
