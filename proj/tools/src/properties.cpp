#include "tansec/properties.hpp"

#include "tansec/convex_measures.hpp"
#include "tansec/errors.hpp"
#include "tansec/tangent_geometry.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <random>
#include <sstream>

namespace tansec {

namespace {

PropertyResult make(std::string name, double worst, double tol, bool pass, std::string detail = {}) {
  return {std::move(name), pass, worst, tol, std::move(detail)};
}

Mat rotation_2d(double a) {
  Mat r(2, 2);
  r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  return r;
}

Mat rotation_3d(double a, double b) {
  Mat rz = Mat::Identity(3, 3);
  rz.topLeftCorner(2, 2) = rotation_2d(a);
  Mat rx = Mat::Identity(3, 3);
  rx.bottomRightCorner(2, 2) = rotation_2d(b);
  return rz * rx;
}

std::vector<FunctionalDescriptor> registry(int m) {
  std::vector<FunctionalDescriptor> out;
  for (int k = 1; k <= m; ++k) out.push_back({FunctionalKind::IntrinsicVolume, k});
  for (int k = 1; k <= 3; ++k) out.push_back({FunctionalKind::MeanWidthPower, k});
  if (m <= 3) out.push_back({FunctionalKind::JohnEllipsoidVolume, m});
  return out;
}

/// Distance from p (outside or on the boundary) to the ellipsoid with the
/// given semiaxes, all in the ellipsoid's axis frame.
double distance_to_ellipsoid(const Vec& p, const Vec& a) {
  auto constraint = [&](double lambda) {
    return (a.array() * p.array() / (a.array().square() + lambda)).matrix().squaredNorm() - 1.0;
  };
  if (constraint(0.0) <= 0.0) return 0.0;
  double hi = p.norm() * a.maxCoeff();
  while (constraint(hi) > 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  auto stop = [](double x, double y) { return std::abs(y - x) <= 1e-15 * std::max(1.0, std::abs(y)); };
  const auto [lo, up] = boost::math::tools::toms748_solve(constraint, 0.0, hi, stop, iters);
  const double lambda = 0.5 * (lo + up);
  const Vec x = (a.array().square() * p.array() / (a.array().square() + lambda)).matrix();
  return (p - x).norm();
}

}  // namespace

double parallel_body_volume(const EllipsoidSpec& k, double r) {
  const int m = k.dim();
  const WeightedDirections grid = m == 2 ? WeightedDirections{circle_grid(4096), Vec::Constant(4096, 1.0 / 4096)}
                                         : product_sphere_grid(m, 64);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < grid.directions.cols(); ++j) {
    const Vec u = k.axes.transpose() * grid.directions.col(j);
    const double inner = k.ray_length(grid.directions.col(j));
    auto excess = [&](double t) { return distance_to_ellipsoid(t * u, k.semiaxes) - r; };
    std::uintmax_t iters = 200;
    auto stop = [](double x, double y) { return std::abs(y - x) <= 1e-13; };
    double outer = inner + r;
    while (excess(outer) <= 0.0) outer += r;
    const auto [lo, up] = boost::math::tools::toms748_solve(excess, inner, outer, stop, iters);
    acc += grid.weights(j) * std::pow(0.5 * (lo + up), m);
  }
  return unit_sphere_area(m) / m * acc;
}

std::vector<PropertyResult> sandwich_properties() {
  std::vector<PropertyResult> out;
  struct Case {
    std::string name;
    PerturbationFamily family;
  };
  Vec semi(3);
  semi << 1.0, 1.2, 1.5;
  std::vector<Case> cases;
  cases.push_back({"sandwich ball d=2 c=0.5", PerturbationFamily(RadialBody::ball(2), Polynomial::constant(0.5))});
  cases.push_back({"sandwich ellipsoid d=3 h=0.3+0.1u1^2",
                   PerturbationFamily(RadialBody::ellipsoid(semi), Polynomial({{0.3, {}}, {0.1, {2}}}))});
  for (const auto& c : cases) {
    const int d = c.family.dimension();
    const auto flats = tangent_flats(c.family.base(), d - 1, SubspacePencil::whole_space(d), 64);
    double worst = std::numeric_limits<double>::infinity();
    bool pass = true;
    for (int e = 8; e <= 14; e += 2) {
      const double eps = std::ldexp(1.0, -e);
      for (const auto& f : flats) {
        const double speed = ground_truth_c(c.family, f.frame);
        const SandwichResult r =
            sandwich_check(section_body(c.family, f, eps), dupin_hull(f.frame), 0.8 * speed, 1.25 * speed, eps);
        pass = pass && r.holds;
        worst = std::min({worst, r.lower_margin / std::sqrt(eps), r.upper_margin / std::sqrt(eps)});
      }
    }
    out.push_back(make(c.name, worst, 0.0, pass, "min support margin / sqrt(eps) over eps = 2^-8..2^-14"));
  }
  return out;
}

std::vector<PropertyResult> paraboloid_ratio_properties() {
  std::vector<PropertyResult> out;
  for (int d = 2; d <= 4; ++d) {
    const int n = d - 1;
    Mat g = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) += 0.2 * std::sin(1.0 + i + 2.0 * j);
    }
    const Mat form = 0.5 * (g * g.transpose());
    const double expect = 2.0 / (d + 1);
    const double general = std::abs(paraboloid_cap_ratio(form, 0.7, 0.01) - expect);
    const double normalized = std::abs(paraboloid_cap_ratio(0.5 * Mat::Identity(n, n), 1.0, 1.0) - expect);
    const double worst = std::max(general, normalized);
    out.push_back(make("paraboloid cap ratio d=" + std::to_string(d), worst, 1e-6, worst <= 1e-6));
  }
  return out;
}

std::vector<PropertyResult> homogeneity_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  Vec a2(2), a3(3), a4(4);
  a2 << 2.0, 1.0;
  a3 << 1.0, 1.2, 1.5;
  a4 << 1.0, 0.8, 1.3, 1.1;
  std::vector<EllipsoidSpec> specs{{Vec::Zero(2), a2, rotation_2d(0.3)},
                                   {Vec::Zero(3), a3, rotation_3d(0.4, 0.9)},
                                   {Vec::Zero(4), a4, Mat::Identity(4, 4)}};
  for (const auto& spec : specs) {
    const int m = spec.dim();
    SamplingOptions so;
    so.seed = seed;
    so.mc_rays = 4096;
    const ConvexSample s = ellipsoid_sample(spec, so);
    MeasureOptions mo;
    mo.kubota_frames = 64;
    double worst = 0.0;
    for (const auto& f : registry(m)) {
      if (m == 4 && f.kind == FunctionalKind::IntrinsicVolume && f.degree > 1 && f.degree < 4) continue;
      const double base = functional_value(s, f, mo).value;
      for (double lambda : {0.5, 2.0}) {
        const double scaled = functional_value(s.scaled(lambda), f, mo).value;
        worst = std::max(worst, std::abs(scaled - std::pow(lambda, f.degree) * base) / (std::pow(lambda, f.degree) * base));
      }
    }
    out.push_back(make("homogeneity m=" + std::to_string(m), worst, 1e-6, worst <= 1e-6));
  }
  return out;
}

std::vector<PropertyResult> monotonicity_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> axis(0.5, 1.5), grow(0.05, 0.3), angle(0.0, 3.0);
  for (int m = 2; m <= 3; ++m) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 4; ++trial) {
      Vec a(m);
      Vec b(m);
      for (int i = 0; i < m; ++i) {
        a(i) = axis(rng);
        b(i) = a(i) * (1.0 + grow(rng));
      }
      const Mat rot = m == 2 ? rotation_2d(angle(rng)) : rotation_3d(angle(rng), angle(rng));
      const ConvexSample sa = ellipsoid_sample({Vec::Zero(m), a, rot});
      const ConvexSample sb = ellipsoid_sample({Vec::Zero(m), b, rot});
      for (const auto& f : registry(m)) {
        const double fa = functional_value(sa, f).value;
        const double fb = functional_value(sb, f).value;
        worst = std::max(worst, fa / (fb * (1.0 + 1e-6)) - 1.0);
      }
    }
    out.push_back(make("monotonicity m=" + std::to_string(m), worst, 0.0, worst <= 0.0,
                       "max F(A)/(F(B)(1+1e-6)) - 1 over nested pairs"));
  }
  return out;
}

std::vector<PropertyResult> steiner_properties() {
  std::vector<PropertyResult> out;
  Vec ball = Vec::Ones(3);
  Vec ell(3);
  ell << 1.0, 1.2, 1.5;
  for (const auto& [name, spec] : {std::pair<std::string, EllipsoidSpec>{"B^3", EllipsoidSpec::axis_aligned(ball)},
                                   {"ellipsoid (1,1.2,1.5)", {Vec::Zero(3), ell, rotation_3d(0.2, 0.5)}}}) {
    const ConvexSample s = ellipsoid_sample(spec);
    double worst_exact = 0.0;
    double worst_sampled = 0.0;
    for (double r : {0.1, 0.2}) {
      const double truth = parallel_body_volume(spec, r);
      double exact = unit_ball_volume(3) * r * r * r;
      double sampled = exact;
      for (int k = 1; k <= 3; ++k) {
        const double w = unit_ball_volume(3 - k) * std::pow(r, 3 - k);
        exact += w * ellipsoid_intrinsic_volume(spec, k);
        sampled += w * intrinsic_volume(s, k).value;
      }
      worst_exact = std::max(worst_exact, std::abs(exact - truth) / truth);
      worst_sampled = std::max(worst_sampled, std::abs(sampled - truth) / truth);
    }
    out.push_back(make("steiner " + name + " (closed form V_k)", worst_exact, 5e-3, worst_exact <= 5e-3));
    out.push_back(make("steiner " + name + " (sampled V_k)", worst_sampled, 5e-3, worst_sampled <= 5e-3));
  }
  return out;
}

std::vector<PropertyResult> embedding_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  const double radius = 0.7;
  const ConvexSample disc = ellipsoid_sample(EllipsoidSpec::axis_aligned(Vec::Constant(2, radius)));
  const double v1 = intrinsic_volume(disc, 1).value;
  const double v2 = intrinsic_volume(disc, 2).value;
  const Mat embed = rotation_3d(0.7, 1.1).leftCols(2);
  const Mat lifted = embed * disc.points;
  const Measurement e1 = point_cloud_v1(lifted, random_directions(3, 8192, seed));
  const Measurement e2 = point_cloud_kubota(lifted, 2, 2048, seed + 1);
  const double d1 = std::abs(e1.value - v1);
  const double d2 = std::abs(e2.value - v2);
  const double t1 = 3.0 * e1.std_error + 1e-3 * v1;
  const double t2 = 3.0 * e2.std_error + 1e-3 * v2;
  out.push_back(make("embedding disc V_1 (R^2 vs R^3)", d1, t1, d1 <= t1));
  out.push_back(make("embedding disc V_2 (R^2 vs R^3)", d2, t2, d2 <= t2));
  return out;
}

std::vector<PropertyResult> kubota_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  for (int m = 2; m <= 4; ++m) {
    for (const bool mc : {false, true}) {
      if (m == 4 && !mc) continue;
      SamplingOptions so;
      so.force_monte_carlo = mc;
      so.mc_rays = m == 4 ? 32768 : 16384;
      so.seed = derive_seed(seed, static_cast<std::uint64_t>(m));
      const ConvexSample s = ellipsoid_sample(EllipsoidSpec::axis_aligned(Vec::Ones(m)), so);
      MeasureOptions mo;
      mo.support_directions = 4096;
      mo.kubota_frames = m == 4 ? 256 : 512;
      double worst = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double truth = binomial(m, k) * unit_ball_volume(m) / unit_ball_volume(m - k);
        worst = std::max(worst, std::abs(intrinsic_volume(s, k, mo).value - truth) / truth);
      }
      out.push_back(make("kubota calibration B^" + std::to_string(m) + (mc ? " (monte carlo)" : " (exact)"), worst,
                         0.01, worst <= 0.01));
    }
  }
  return out;
}

std::vector<PropertyResult> all_properties(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  auto append = [&](std::vector<PropertyResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(sandwich_properties());
  append(paraboloid_ratio_properties());
  append(homogeneity_properties(seed + 7));
  append(monotonicity_properties(seed + 11));
  append(steiner_properties());
  append(embedding_properties(seed + 13));
  append(kubota_properties(seed + 17));
  return out;
}

}  // namespace tansec
