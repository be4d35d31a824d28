#include "tansec/errors.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace tansec;

namespace {

Vec vec3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

}  // namespace

TEST(TangentFlats, PencilFlatsContainTheFixedLine) {
  const RadialBody ell = RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5));
  const SubspacePencil pencil = SubspacePencil::about(vec3(0, 0, 1), 16);
  EXPECT_EQ(pencil.parameter_dim(), 1);
  const auto flats = tangent_flats(ell, 1, pencil, 8);
  ASSERT_FALSE(flats.empty());
  for (const auto& f : flats) {
    EXPECT_EQ(f.dim, 1);
    EXPECT_LT(orthonormality_defect(f.span), 1e-12);
    // e3 lies in the span, the tangency point lies on the boundary, and the
    // flat direction is orthogonal to the in-span normal.
    EXPECT_NEAR((f.span * (f.span.transpose() * vec3(0, 0, 1)) - vec3(0, 0, 1)).norm(), 0.0, 1e-12);
    EXPECT_NEAR(ell.gap(f.base), 0.0, 1e-12);
    EXPECT_NEAR((f.basis.transpose() * f.normal()).norm(), 0.0, 1e-12);
  }
}

TEST(TangentFlats, HyperplanesSupportTheBody) {
  const RadialBody ell = RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5));
  const auto flats = tangent_hyperplanes(ell, direction_grid(3, 40).directions);
  for (const auto& f : flats) {
    // Support value in the normal direction equals <base, nu>.
    const Vec nu = f.normal();
    const Vec a = ell.semiaxes();
    const double h = (a.array() * nu.array()).matrix().norm();
    EXPECT_NEAR(f.base.dot(nu), h, 1e-10);
  }
}

TEST(TangentFlats, RestrictRejectsNonOrthonormalBasis) {
  Mat b(3, 2);
  b << 1, 1, 0, 1, 0, 0;
  EXPECT_THROW(restrict(RadialBody::ball(3), b), BadSubspace);
}

TEST(TangentFlats, RestrictedBodyReadsParentRadii) {
  const RadialBody ell = RadialBody::ellipsoid(vec3(1.0, 1.2, 1.5));
  Mat b(3, 2);
  b << 0, 0, 1, 0, 0, 1;
  const RestrictedBody r = restrict(ell, b);
  Vec v(2);
  v << 0, 1;
  EXPECT_DOUBLE_EQ(r.radial(v), 1.5);
}

TEST(TangentFlats, CloseUnderInversionPairsEveryDirection) {
  const Mat dirs = direction_grid(3, 31).directions;
  const Mat closed = close_under(dirs, -Mat::Identity(3, 3));
  for (Eigen::Index i = 0; i < closed.cols(); ++i) {
    double best = 1e9;
    for (Eigen::Index j = 0; j < closed.cols(); ++j) best = std::min(best, (closed.col(j) + closed.col(i)).norm());
    EXPECT_LT(best, 1e-9);
  }
}

TEST(TangentFlats, ManifoldCount) {
  const FlatCountReport r = flat_count_manifold_check(1, 3);
  EXPECT_EQ(r.total_dim, 2);
  EXPECT_EQ(r.grassmannian_dim, 3);
  EXPECT_TRUE(r.grassmannian_exceeds);
  EXPECT_FALSE(flat_count_manifold_check(2, 3).grassmannian_exceeds);
}

TEST(TangentFlats, CsvHasOneRowPerFlat) {
  const auto flats = tangent_hyperplanes(RadialBody::ball(2), direction_grid(2, 6).directions);
  std::ostringstream out;
  write_flats_csv(out, flats);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
}
