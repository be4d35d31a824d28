#include "tansec/convex_sample.hpp"

#include "tansec/csv.hpp"
#include "tansec/errors.hpp"
#include "tansec/hull.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tansec {

ConvexSample ConvexSample::scaled(double lambda) const {
  ConvexSample s = *this;
  s.points *= lambda;
  s.radii *= lambda;
  s.shape *= lambda;
  return s;
}

double ConvexSample::support(const Vec& theta) const {
  if (degenerate || points.cols() == 0) return 0.0;
  return (theta.transpose() * points).maxCoeff();
}

namespace {

class RayShooter {
 public:
  RayShooter(const InsideFn& inside, const Vec& anchor, const Mat& frame, double patch, double tol)
      : inside_(inside), anchor_(anchor), frame_(frame), patch_(patch), tol_(tol) {}

  /// Distance from the anchor to the boundary along local unit direction w.
  double shoot(const Vec& w, double guess = 0.0) const {
    const Vec dir = frame_ * w;
    auto f = [&](double r) { return inside_(anchor_ + r * dir); };
    double hi = patch_;
    if (guess > 0.0 && 2.0 * guess < patch_ && f(2.0 * guess) < 0.0) {
      hi = 2.0 * guess;
    } else if (f(patch_) >= 0.0) {
      throw EpsilonTooLarge("ray leaves the local patch: reduce epsilon or enlarge the patch");
    }
    std::uintmax_t iters = 200;
    const double tol = tol_;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    const auto [lo, up] = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi), stop, iters);
    return 0.5 * (lo + up);
  }

 private:
  InsideFn inside_;
  Vec anchor_;
  Mat frame_;
  double patch_;
  double tol_;
};

int default_rays(int m, const SamplingOptions& opt) {
  if (opt.rays > 0) return opt.rays;
  if (opt.force_monte_carlo || m > 3) return opt.mc_rays;
  return m <= 2 ? 512 : 2048;
}

ConvexSample degenerate_sample(int ambient, int m, const Vec& anchor, const Mat& frame) {
  ConvexSample s;
  s.ambient_dim = ambient;
  s.dim = m;
  s.anchor = anchor;
  s.frame = frame;
  s.points = Mat::Zero(m, 0);
  s.ref_dirs = Mat::Zero(m, 0);
  s.shape = Mat::Identity(m, m);
  s.radii = Vec::Zero(0);
  s.degenerate = true;
  return s;
}

int rim_count(const ConvexSample& s) {
  if (s.dim == 2) return 2;
  return 4 * static_cast<int>(std::ceil(std::sqrt(std::numbers::pi * static_cast<double>(s.count()))));
}

/// Adds boundary points given in local coordinates and re-triangulates, so
/// that mesh edges follow a crease of the body.
void add_points(ConvexSample& s, const std::vector<Vec>& extra) {
  const Eigen::Index old = s.count();
  const auto n = static_cast<Eigen::Index>(extra.size());
  s.points.conservativeResize(Eigen::NoChange, old + n);
  s.ref_dirs.conservativeResize(Eigen::NoChange, old + n);
  s.radii.conservativeResize(old + n);
  const Mat inv = s.shape.inverse();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vec& q = extra[static_cast<std::size_t>(j)];
    s.points.col(old + j) = q;
    s.radii(old + j) = q.norm();
    s.ref_dirs.col(old + j) = (inv * q).normalized();
  }
  if (s.scheme == SampleScheme::Exact && s.dim == 3) {
    s.mesh.vertices = s.ref_dirs;
    s.mesh.triangles = convex_hull_3d(s.ref_dirs).faces;
  }
}

Mat rim_directions(int dim, int count) {
  if (dim == 1) return (Mat(1, 2) << 1.0, -1.0).finished();
  return circle_grid(count, 0.5);
}

}  // namespace

ConvexSample ray_sample(const InsideFn& inside, const Vec& anchor, const Mat& frame, double patch,
                        const SamplingOptions& opt) {
  const int m = static_cast<int>(frame.cols());
  if (!(inside(anchor) > 0.0)) throw NumericalError("ray_sample: anchor is not interior");
  const RayShooter shooter(inside, anchor, frame, patch, opt.root_tol);

  ConvexSample s;
  s.ambient_dim = static_cast<int>(anchor.size());
  s.dim = m;
  s.anchor = anchor;
  s.frame = frame;
  s.seed = opt.seed;
  s.shape = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    Vec e = Vec::Zero(m);
    e(i) = 1.0;
    s.shape(i, i) = 0.5 * (shooter.shoot(e) + shooter.shoot(-e));
  }

  const int n = default_rays(m, opt);
  if (m == 1) {
    s.ref_dirs = Mat(1, 2);
    s.ref_dirs << 1.0, -1.0;
  } else if (!opt.force_monte_carlo && m == 2) {
    s.ref_dirs = circle_grid(n);
  } else if (!opt.force_monte_carlo && m == 3) {
    s.mesh = fibonacci_mesh(n);
    s.ref_dirs = s.mesh.vertices;
  } else {
    s.scheme = SampleScheme::MonteCarlo;
    s.ref_dirs = random_directions(m, n, opt.seed);
  }

  const Eigen::Index count = s.ref_dirs.cols();
  s.points.resize(m, count);
  s.radii.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Vec a = s.shape * s.ref_dirs.col(i);
    const double scale = a.norm();
    const Vec w = a / scale;
    const double r = shooter.shoot(w, scale);
    s.radii(i) = r;
    s.points.col(i) = r * w;
  }
  return s;
}

ConvexSample section_body(const PerturbationFamily& family, const AffineFlat& flat, double eps,
                          const SamplingOptions& opt) {
  if (flat.ambient != family.dimension()) throw DimensionMismatch("section_body: flat dimension differs");
  const Vec& y = flat.base;
  const double ry = y.norm();
  if (family.gap(eps, y) <= 1e-14 * ry) return degenerate_sample(flat.ambient, flat.dim, y, flat.basis);
  auto inside = [&](const Vec& p) { return family.gap(eps, p); };
  return ray_sample(inside, y, flat.basis, opt.patch_factor * ry, opt);
}

ConvexSample cap_body(const PerturbationFamily& family, const AffineFlat& flat, double eps,
                      const SamplingOptions& opt) {
  const int d = family.dimension();
  if (flat.ambient != d || flat.dim != d - 1) throw DimensionMismatch("cap_body: needs a tangent hyperplane");
  const Vec& y = flat.base;
  const Vec nu = flat.frame.normal;
  const double ry = y.norm();
  Mat frame(d, d);
  frame << flat.basis, nu;
  if (family.gap(eps, y) <= 1e-14 * ry) return degenerate_sample(d, d, y, frame);

  const double patch = opt.patch_factor * ry;
  auto along = [&](double s) { return family.gap(eps, y + s * nu); };
  if (along(patch) >= 0.0) throw EpsilonTooLarge("cap height exceeds the local patch");
  std::uintmax_t iters = 200;
  const double tol = opt.root_tol;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [lo, up] = boost::math::tools::toms748_solve(along, 0.0, patch, stop, iters);
  const double height = 0.5 * (lo + up);
  if (height <= 1e-14 * ry) return degenerate_sample(d, d, y, frame);

  const Vec anchor = y + 0.5 * height * nu;
  auto inside = [&](const Vec& p) { return std::min(family.gap(eps, p), (p - y).dot(nu)); };
  ConvexSample s = ray_sample(inside, anchor, frame, patch, opt);
  if (s.scheme == SampleScheme::MonteCarlo || d > 3) return s;

  // Rim of the cap: boundary of K^eps cap H, shot from the tangency point.
  auto in_plane = [&](const Vec& p) { return family.gap(eps, p); };
  const RayShooter rim(in_plane, y, flat.basis, patch, opt.root_tol);
  const Mat dirs = rim_directions(d - 1, rim_count(s));
  std::vector<Vec> extra;
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    const Vec theta = dirs.col(j);
    Vec q(d);
    q << rim.shoot(theta) * theta, -0.5 * height;
    extra.push_back(q);
  }
  add_points(s, extra);
  return s;
}

ConvexSample paraboloid_cap_sample(const Mat& form, const SamplingOptions& opt) {
  const int d = static_cast<int>(form.rows()) + 1;
  auto inside = [&](const Vec& p) {
    const Vec z = p.head(d - 1);
    const double h = p(d - 1);
    return std::min(-h, h + 1.0 - z.dot(form * z));
  };
  Vec anchor = Vec::Zero(d);
  anchor(d - 1) = -0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(form);
  const double reach = 2.0 + 2.0 / std::sqrt(es.eigenvalues().minCoeff());
  ConvexSample s = ray_sample(inside, anchor, Mat::Identity(d, d), reach, opt);
  if (s.scheme == SampleScheme::MonteCarlo || d > 3) return s;

  const Mat root_inv = es.operatorInverseSqrt();
  const Mat dirs = rim_directions(d - 1, rim_count(s));
  std::vector<Vec> extra;
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    Vec q(d);
    q << root_inv * dirs.col(j), 0.5;
    extra.push_back(q);
  }
  add_points(s, extra);
  return s;
}

ConvexSample ellipsoid_sample(const EllipsoidSpec& spec, const SamplingOptions& opt) {
  const int m = spec.dim();
  auto inside = [&](const Vec& p) {
    const Vec local = spec.axes.transpose() * (p - spec.center);
    return 1.0 - (local.array() / spec.semiaxes.array()).matrix().norm();
  };
  return ray_sample(inside, spec.center, Mat::Identity(m, m), 2.0 * spec.semiaxes.maxCoeff(), opt);
}

double convexity_spot_check(const ConvexSample& s, const InsideFn& inside, int pairs, std::uint64_t seed) {
  if (s.degenerate || s.count() < 2) return 0.0;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, s.points.cols() - 1);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < pairs; ++k) {
    const Eigen::Index i = pick(rng);
    const Eigen::Index j = pick(rng);
    if (i == j) continue;
    const Vec mid = 0.5 * (s.ambient_point(i) + s.ambient_point(j));
    worst = std::max(worst, -inside(mid));
  }
  return worst;
}

void write_sample_csv(std::ostream& out, const ConvexSample& s) {
  out << "index";
  for (int i = 1; i <= s.ambient_dim; ++i) out << ",x_" << i;
  out << '\n';
  for (Eigen::Index j = 0; j < s.points.cols(); ++j) {
    const Vec p = s.ambient_point(j);
    out << j;
    for (Eigen::Index i = 0; i < p.size(); ++i) out << ',' << format_double(p(i));
    out << '\n';
  }
}

}  // namespace tansec
