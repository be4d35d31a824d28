#include "tansec/asymptotic_estimator.hpp"

#include "tansec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tansec {

EpsilonGrid EpsilonGrid::geometric(double eps0, double ratio, int count) {
  EpsilonGrid g;
  for (int i = 0; i < count; ++i) g.values.push_back(eps0 * std::pow(ratio, i));
  g.validate();
  return g;
}

void EpsilonGrid::validate() const {
  if (values.empty()) throw Error("epsilon grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw Error("epsilon grid values must be positive");
    if (i > 0 && !(values[i] < values[i - 1])) throw Error("epsilon grid must be strictly decreasing");
  }
}

std::string_view to_string(SweepMode mode) { return mode == SweepMode::Section ? "section" : "cap"; }

double scaling_exponent(SweepMode mode, const FunctionalDescriptor& f, int ambient_dim) {
  if (mode == SweepMode::Cap && f.volume_type(ambient_dim)) return 0.5 * (ambient_dim + 1);
  return 0.5 * f.degree;
}

MeasurementSeries sweep(const PerturbationFamily& family, const AffineFlat& flat, const FunctionalDescriptor& f,
                        const EpsilonGrid& grid, SweepMode mode, const SweepOptions& opt) {
  grid.validate();
  MeasurementSeries s;
  s.flat_id = flat.id;
  s.direction = flat.tangency;
  s.mode = mode;
  s.functional = f;
  s.alpha = scaling_exponent(mode, f, family.dimension());

  const int n = grid.size();
  std::vector<Measurement> got(n);
  int last_failure = -1;
  for (int i = 0; i < n; ++i) {
    SamplingOptions so = opt.sampling;
    so.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(flat.id), static_cast<std::uint64_t>(i));
    try {
      const ConvexSample sample = mode == SweepMode::Section ? section_body(family, flat, grid.values[i], so)
                                                             : cap_body(family, flat, grid.values[i], so);
      got[i] = functional_value(sample, f, opt.measure);
    } catch (const EpsilonTooLarge&) {
      last_failure = i;
    }
  }
  s.dropped_head = last_failure + 1;
  if (n - s.dropped_head < std::min(opt.min_points, n)) {
    std::ostringstream msg;
    msg << "flat " << flat.id << ": only " << n - s.dropped_head << " grid points fit the local patch";
    throw EpsilonTooLarge(msg.str());
  }
  for (int i = s.dropped_head; i < n; ++i) {
    s.eps.push_back(grid.values[i]);
    s.values.push_back(got[i].value);
    s.errors.push_back(got[i].std_error);
  }
  return s;
}

namespace {

struct Fit {
  Vec coef;
  Mat cov;
  double residual = 0.0;
};

Fit weighted_fit(const Vec& x, const Vec& y, const Vec& sigma, int terms) {
  const Eigen::Index n = x.size();
  Mat a(n, terms);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    if (terms > 1) a(i, 1) = std::sqrt(x(i));
    if (terms > 2) a(i, 2) = x(i);
  }
  const bool weighted = (sigma.array() > 0).all();
  const Vec w = weighted ? Vec(sigma.array().square().inverse()) : Vec::Ones(n);
  const Vec sw = w.array().sqrt();
  const Mat aw = sw.asDiagonal() * a;
  const Vec yw = sw.asDiagonal() * y;
  Fit f;
  f.coef = aw.colPivHouseholderQr().solve(yw);
  const Vec r = y - a * f.coef;
  const double wrss = (w.array() * r.array().square()).sum();
  const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
  f.residual = std::sqrt(wrss / w.sum()) / scale;
  const Mat normal = aw.transpose() * aw;
  const double dof = std::max<double>(1.0, static_cast<double>(n - terms));
  const double s2 = weighted ? std::max(1.0, wrss / dof) : wrss / dof;
  f.cov = s2 * normal.inverse();
  return f;
}

}  // namespace

LimitEstimate extract_limit(const MeasurementSeries& series, double zero_floor, double max_residual) {
  const int n = series.size();
  if (n < 4) throw PoorFit("extract_limit needs at least 4 grid points");
  Vec x(n), y(n), sigma(n);
  for (int i = 0; i < n; ++i) {
    const double scale = std::pow(series.eps[i], series.alpha);
    x(i) = series.eps[i];
    y(i) = series.values[i] / scale;
    sigma(i) = series.errors[i] / scale;
  }

  LimitEstimate est;
  const double ymax = y.cwiseAbs().maxCoeff();
  if (ymax == 0.0) {
    est.zero = true;
    return est;
  }
  est.drift = (y.maxCoeff() - y.minCoeff()) / ymax;

  Fit fit = weighted_fit(x, y, sigma, 2);
  if (fit.residual > max_residual) {
    fit = weighted_fit(x, y, sigma, 3);
    est.extended_model = true;
    if (fit.residual > max_residual) {
      std::ostringstream msg;
      msg << "flat " << series.flat_id << ": relative fit residual " << fit.residual << " exceeds " << max_residual;
      throw PoorFit(msg.str());
    }
    est.correction2 = fit.coef(2);
  }
  est.limit = std::max(0.0, fit.coef(0));
  est.correction = fit.coef(1);
  est.std_error = std::sqrt(std::max(0.0, fit.cov(0, 0)));
  est.residual = fit.residual;
  est.zero = est.limit < std::max(3.0 * est.std_error, zero_floor);
  return est;
}

double invert_limit(const LimitEstimate& est, double reference, double alpha) {
  if (est.zero) return 0.0;
  if (!(reference > 0.0)) throw Error("invert_limit: reference value must be positive");
  return std::pow(est.limit / reference, 1.0 / alpha);
}

double invert_section_limit(const LimitEstimate& est, double f_of_e, int k) { return invert_limit(est, f_of_e, 0.5 * k); }

double invert_cap_volume_limit(const LimitEstimate& est, const Mat& form, int d) {
  const double ref = unit_ball_volume(d - 1) * 2.0 / (d + 1) / std::sqrt(form.determinant());
  return invert_limit(est, ref, 0.5 * (d + 1));
}

double invert_cap_intrinsic_limit(const LimitEstimate& est, double vk_of_e, int k) {
  return invert_limit(est, vk_of_e, 0.5 * k);
}

double reference_value(SweepMode mode, const FunctionalDescriptor& f, const AffineFlat& flat) {
  const DupinForm dupin = dupin_hull(flat.frame);
  if (mode == SweepMode::Cap && f.volume_type(flat.ambient)) return functional_of_paraboloid_cap(dupin.form, f);
  return functional_of_ellipsoid(dupin.ellipsoid(), f);
}

}  // namespace tansec
