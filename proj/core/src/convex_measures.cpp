#include "tansec/convex_measures.hpp"

#include "tansec/errors.hpp"
#include "tansec/hull.hpp"
#include "tansec/john_ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace tansec {

namespace {

/// V_1 = m kappa_m / (2 kappa_{m-1}) * mean over theta of width(theta).
double v1_factor(int m) { return m * unit_ball_volume(m) / (2.0 * unit_ball_volume(m - 1)); }

double kubota_factor(int m, int k) {
  return binomial(m, k) * unit_ball_volume(m) / (unit_ball_volume(k) * unit_ball_volume(m - k));
}

Measurement mean_and_error(const Vec& values) {
  const double n = static_cast<double>(values.size());
  const double mean = values.mean();
  const double var = values.size() > 1 ? (values.array() - mean).square().sum() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double projected_volume(const Mat& projected) {
  switch (projected.rows()) {
    case 1: return projected.maxCoeff() - projected.minCoeff();
    case 2: return polygon_area(projected, convex_hull_2d(projected));
    case 3: return hull_volume(projected, convex_hull_3d(projected));
    default: break;
  }
  throw UnsupportedCombination("projection volume is limited to dimension 3");
}

Measurement star_volume_mc(const ConvexSample& s) {
  const int m = s.dim;
  Vec terms(s.count());
  for (Eigen::Index i = 0; i < s.count(); ++i) {
    const double stretch = (s.shape * s.ref_dirs.col(i)).norm();
    terms(i) = std::pow(s.radii(i) / stretch, m);
  }
  const Measurement avg = mean_and_error(terms);
  const double factor = std::abs(s.shape.determinant()) * unit_sphere_area(m) / m;
  return {factor * avg.value, factor * avg.std_error};
}

double mesh_volume(const ConvexSample& s) {
  double v = 0.0;
  for (const auto& t : s.mesh.triangles) {
    Eigen::Matrix3d a;
    a << s.points.col(t[0]), s.points.col(t[1]), s.points.col(t[2]);
    v += a.determinant();
  }
  return v / 6.0;
}

double mesh_area(const ConvexSample& s) {
  double area = 0.0;
  for (const auto& t : s.mesh.triangles) {
    const Eigen::Vector3d a = s.points.col(t[0]);
    const Eigen::Vector3d b = s.points.col(t[1]);
    const Eigen::Vector3d c = s.points.col(t[2]);
    area += 0.5 * (b - a).cross(c - a).norm();
  }
  return area;
}

Measurement support_width(const Mat& points, const Mat& dirs) {
  const Mat proj = dirs.transpose() * points;  // n_dirs x M
  const Vec widths = proj.rowwise().maxCoeff() - proj.rowwise().minCoeff();
  return mean_and_error(widths);
}

Mat random_frame(int m, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat g(m, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < m; ++i) g(i, j) = normal(rng);
  }
  return orthonormalize(g);
}

}  // namespace

Measurement point_cloud_v1(const Mat& points, const Mat& directions) {
  const int m = static_cast<int>(points.rows());
  if (directions.rows() != m) throw DimensionMismatch("point_cloud_v1: direction dimension differs");
  const Measurement w = support_width(points, directions);
  return {v1_factor(m) * w.value, v1_factor(m) * w.std_error};
}

Measurement point_cloud_kubota(const Mat& points, int k, int frames, std::uint64_t seed) {
  const int m = static_cast<int>(points.rows());
  if (k < 1 || k > m || k > 3) throw DimensionMismatch("point_cloud_kubota: k must satisfy 1 <= k <= min(m, 3)");
  std::mt19937_64 rng(seed);
  Vec vols(frames);
  for (int j = 0; j < frames; ++j) {
    const Mat frame = random_frame(m, k, rng);
    vols(j) = projected_volume(frame.transpose() * points);
  }
  const Measurement avg = mean_and_error(vols);
  const double factor = kubota_factor(m, k);
  return {factor * avg.value, factor * avg.std_error};
}

Measurement intrinsic_volume(const ConvexSample& sample, int k, const MeasureOptions& opt) {
  const int m = sample.dim;
  if (k < 1 || k > m) throw DimensionMismatch("intrinsic_volume: k must satisfy 1 <= k <= m");
  if (sample.degenerate || sample.count() == 0) return {};
  if (m == 1) return {sample.points.maxCoeff() - sample.points.minCoeff(), 0.0};

  if (sample.scheme == SampleScheme::Exact && m == 2) {
    const std::vector<int> hull = convex_hull_2d(sample.points);
    if (k == 2) return {polygon_area(sample.points, hull), 0.0};
    return {0.5 * polygon_perimeter(sample.points, hull), 0.0};
  }
  if (sample.scheme == SampleScheme::Exact && m == 3) {
    if (k == 3) return {mesh_volume(sample), 0.0};
    if (k == 2) return {0.5 * mesh_area(sample), 0.0};
    return {point_cloud_v1(sample.points, fibonacci_sphere(opt.support_directions)).value, 0.0};
  }

  if (k == m) return star_volume_mc(sample);
  std::mt19937_64 rng(derive_seed(sample.seed, 0x6b75626f74ULL, static_cast<std::uint64_t>(k)));
  if (k == 1) return point_cloud_v1(sample.points, random_directions(m, opt.support_directions, rng()));
  return point_cloud_kubota(sample.points, k, opt.kubota_frames, rng());
}

double ellipsoid_intrinsic_volume(const EllipsoidSpec& spec, int k) {
  const int m = spec.dim();
  if (k < 1 || k > m) throw DimensionMismatch("ellipsoid_intrinsic_volume: k must satisfy 1 <= k <= m");
  const Vec& a = spec.semiaxes;
  if (k == m) return unit_ball_volume(m) * a.prod();
  if (m == 1) return 2.0 * a(0);

  auto sphere_mean = [&](auto&& fn) {
    const WeightedDirections grid = m == 2 ? WeightedDirections{circle_grid(4096), Vec::Constant(4096, 1.0 / 4096)}
                                           : product_sphere_grid(m, m == 3 ? 64 : 24);
    double s = 0.0;
    for (Eigen::Index j = 0; j < grid.directions.cols(); ++j) s += grid.weights(j) * fn(Vec(grid.directions.col(j)));
    return s;
  };

  if (k == 1) {
    const double mean_h = sphere_mean([&](const Vec& t) { return (spec.axes.transpose() * t).cwiseProduct(a).norm(); });
    return v1_factor(m) * 2.0 * mean_h;
  }
  if (k == m - 1) {
    const double mean_inv =
        sphere_mean([&](const Vec& t) { return (spec.axes.transpose() * t).cwiseQuotient(a).norm(); });
    return 0.5 * m * unit_ball_volume(m) * a.prod() * mean_inv;
  }

  const Mat s = spec.axes * a.asDiagonal() * spec.axes.transpose();
  const Mat s2 = s * s;
  std::mt19937_64 rng(derive_seed(0x656c6c6970ULL, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k)));
  constexpr int frames = 200000;
  double acc = 0.0;
  for (int j = 0; j < frames; ++j) {
    const Mat f = random_frame(m, k, rng);
    acc += std::sqrt((f.transpose() * s2 * f).determinant());
  }
  return kubota_factor(m, k) * unit_ball_volume(k) * acc / frames;
}

std::string_view to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::IntrinsicVolume: return "intrinsic_volume";
    case FunctionalKind::MeanWidthPower: return "mean_width_power";
    case FunctionalKind::JohnEllipsoidVolume: return "john_ellipsoid_volume";
  }
  return "unknown";
}

FunctionalKind parse_functional_kind(std::string_view name) {
  if (name == "intrinsic_volume") return FunctionalKind::IntrinsicVolume;
  if (name == "mean_width_power") return FunctionalKind::MeanWidthPower;
  if (name == "john_ellipsoid_volume" || name == "john") return FunctionalKind::JohnEllipsoidVolume;
  throw UnsupportedCombination("unknown functional kind '" + std::string(name) + "'");
}

void FunctionalDescriptor::validate(int m) const {
  if (degree < 1) throw UnsupportedCombination("functional degree must be >= 1");
  switch (kind) {
    case FunctionalKind::IntrinsicVolume:
      if (degree > m) throw DimensionMismatch("intrinsic_volume degree exceeds the sample dimension");
      break;
    case FunctionalKind::MeanWidthPower: break;
    case FunctionalKind::JohnEllipsoidVolume:
      if (degree != m) throw UnsupportedCombination("john_ellipsoid_volume requires degree equal to the dimension");
      if (m > 3) throw UnsupportedCombination("john_ellipsoid_volume is limited to dimension <= 3");
      break;
  }
}

bool FunctionalDescriptor::volume_type(int m) const {
  return kind == FunctionalKind::JohnEllipsoidVolume || (kind == FunctionalKind::IntrinsicVolume && degree == m);
}

std::string FunctionalDescriptor::label() const {
  return std::string(to_string(kind)) + ":" + std::to_string(degree);
}

Measurement functional_value(const ConvexSample& sample, const FunctionalDescriptor& f, const MeasureOptions& opt) {
  f.validate(sample.dim);
  if (sample.degenerate || sample.count() == 0) return {};
  switch (f.kind) {
    case FunctionalKind::IntrinsicVolume: return intrinsic_volume(sample, f.degree, opt);
    case FunctionalKind::MeanWidthPower: {
      const Measurement w = intrinsic_volume(sample, 1, opt);
      const double v = std::pow(w.value, f.degree);
      return {v, f.degree * std::pow(w.value, f.degree - 1) * w.std_error};
    }
    case FunctionalKind::JohnEllipsoidVolume: return {max_inscribed_ellipsoid(sample.points).volume, 0.0};
  }
  return {};
}

double functional_of_ellipsoid(const EllipsoidSpec& spec, const FunctionalDescriptor& f) {
  f.validate(spec.dim());
  switch (f.kind) {
    case FunctionalKind::IntrinsicVolume: return ellipsoid_intrinsic_volume(spec, f.degree);
    case FunctionalKind::MeanWidthPower: return std::pow(ellipsoid_intrinsic_volume(spec, 1), f.degree);
    case FunctionalKind::JohnEllipsoidVolume: return unit_ball_volume(spec.dim()) * spec.semiaxes.prod();
  }
  return 0.0;
}

double functional_of_paraboloid_cap(const Mat& form, const FunctionalDescriptor& f) {
  const int d = static_cast<int>(form.rows()) + 1;
  f.validate(d);
  if (!f.volume_type(d)) throw UnsupportedCombination("paraboloid cap reference needs a volume-type functional");
  if (f.kind == FunctionalKind::IntrinsicVolume) {
    return unit_ball_volume(d - 1) / std::sqrt(form.determinant()) * 2.0 / (d + 1);
  }
  return functional_value(paraboloid_cap_sample(form), f).value;
}

SandwichResult sandwich_check(const ConvexSample& sample, const DupinForm& dupin, double c1, double c2, double eps,
                              int directions) {
  const int m = sample.dim;
  if (dupin.dim() != m) throw DimensionMismatch("sandwich_check: Dupin form and sample dimensions differ");
  const Mat dirs = m == 1 ? Mat((Mat(1, 2) << 1.0, -1.0).finished()) : direction_grid(m, directions).directions;
  SandwichResult r;
  r.tolerance = 1e-8 * std::sqrt(eps);
  r.lower_margin = std::numeric_limits<double>::infinity();
  r.upper_margin = std::numeric_limits<double>::infinity();
  const double inner = c1 > 0 ? std::sqrt(c1 * eps) : 0.0;
  const double outer = std::sqrt(c2 * eps);
  for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
    const Vec t = dirs.col(j);
    const double hs = sample.support(t);
    const double he = dupin.support(t);
    r.upper_margin = std::min(r.upper_margin, outer * he - hs);
    if (c1 > 0) r.lower_margin = std::min(r.lower_margin, hs - inner * he);
  }
  r.holds = r.upper_margin >= -r.tolerance && (c1 <= 0 || r.lower_margin >= -r.tolerance);
  return r;
}

namespace {

/// Integral of g over the unit ball of dimension n, nested Gauss-Legendre
/// after x_k = s_k sin(phi_k) (smooth integrand in phi).
double ball_integral(int n, const std::function<double(const Vec&)>& g, int nodes = 24) {
  const auto [x, w] = gauss_legendre(nodes);
  Vec point(n);
  std::function<double(int, double)> rec = [&](int level, double radius2) -> double {
    if (level == n) return g(point);
    const double s = std::sqrt(std::max(radius2, 0.0));
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double phi = 0.5 * std::numbers::pi * x(j);
      point(level) = s * std::sin(phi);
      const double jac = 0.5 * std::numbers::pi * s * std::cos(phi);
      acc += w(j) * jac * rec(level + 1, radius2 - point(level) * point(level));
    }
    return acc;
  };
  return rec(0, 1.0);
}

}  // namespace

double paraboloid_cap_ratio(const Mat& form, double c, double eps) {
  const int n = static_cast<int>(form.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(form);
  if (es.eigenvalues().minCoeff() <= 0) throw NonConvexPoint("paraboloid_cap_ratio: form is not positive definite");
  const double height = c * eps;
  const Vec semi = (height / es.eigenvalues().array()).sqrt();
  const Mat map = es.eigenvectors() * semi.asDiagonal();
  const double jac = semi.prod();
  const double cap = jac * ball_integral(n, [&](const Vec& x) {
                       const Vec z = map * x;
                       return height - z.dot(form * z);
                     });
  const double base = jac * ball_integral(n, [](const Vec&) { return 1.0; });
  return cap / (base * height);
}

double cap_volume_asymptote(const Mat& form, double c, double eps) {
  const int d = static_cast<int>(form.rows()) + 1;
  return unit_ball_volume(d - 1) / std::sqrt(form.determinant()) * 2.0 / (d + 1) * std::pow(c * eps, 0.5 * (d + 1));
}

}  // namespace tansec
