#include "tansec/body_models.hpp"

#include "tansec/errors.hpp"
#include "tansec/sphere.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

namespace tansec {

UnitVector::UnitVector(Vec v) : v_(std::move(v)) {
  if (std::abs(v_.norm() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "UnitVector: norm " << v_.norm() << " differs from 1";
    throw DimensionMismatch(msg.str());
  }
}

UnitVector UnitVector::normalized(const Vec& v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DimensionMismatch("UnitVector: cannot normalize a zero vector");
  return UnitVector(v / n);
}

Polynomial::Polynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {}

Polynomial Polynomial::constant(double c) { return Polynomial({Monomial{c, {}}}); }

namespace {

double monomial_value(const Monomial& m, const Vec& x) {
  double v = m.coeff;
  for (std::size_t i = 0; i < m.powers.size(); ++i) {
    if (m.powers[i] == 0) continue;
    if (static_cast<Eigen::Index>(i) >= x.size()) return 0.0;
    v *= std::pow(x(static_cast<Eigen::Index>(i)), m.powers[i]);
  }
  return v;
}

}  // namespace

double Polynomial::operator()(const Vec& x) const {
  double s = 0.0;
  for (const auto& m : terms_) s += monomial_value(m, x);
  return s;
}

Vec Polynomial::gradient(const Vec& x) const {
  Vec g = Vec::Zero(x.size());
  for (const auto& m : terms_) {
    for (std::size_t i = 0; i < m.powers.size(); ++i) {
      const int p = m.powers[i];
      if (p == 0 || static_cast<Eigen::Index>(i) >= x.size()) continue;
      Monomial d = m;
      d.coeff *= p;
      d.powers[i] = p - 1;
      g(static_cast<Eigen::Index>(i)) += monomial_value(d, x);
    }
  }
  return g;
}

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Ball: return "ball";
    case BodyKind::Ellipsoid: return "ellipsoid";
    case BodyKind::SmoothStar: return "smooth_star";
  }
  return "unknown";
}

RadialBody RadialBody::ball(int dim, double radius) {
  if (dim < 2) throw DimensionMismatch("RadialBody: dimension must be >= 2");
  if (!(radius > 0)) throw NonConvexPoint("RadialBody: ball radius must be positive");
  RadialBody b;
  b.dim_ = dim;
  b.kind_ = BodyKind::Ball;
  b.r0_ = radius;
  b.orient_ = Mat::Identity(dim, dim);
  return b;
}

RadialBody RadialBody::ellipsoid(const Vec& semiaxes) {
  if (semiaxes.size() < 2) throw DimensionMismatch("RadialBody: dimension must be >= 2");
  if ((semiaxes.array() <= 0).any()) throw NonConvexPoint("RadialBody: semiaxes must be positive");
  RadialBody b;
  b.dim_ = static_cast<int>(semiaxes.size());
  b.kind_ = BodyKind::Ellipsoid;
  b.semiaxes_ = semiaxes;
  b.orient_ = Mat::Identity(b.dim_, b.dim_);
  return b;
}

RadialBody RadialBody::smooth_star(int dim, double r0, Polynomial terms, int validation_directions) {
  if (dim < 2) throw DimensionMismatch("RadialBody: dimension must be >= 2");
  RadialBody b;
  b.dim_ = dim;
  b.kind_ = BodyKind::SmoothStar;
  b.r0_ = r0;
  b.terms_ = std::move(terms);
  b.orient_ = Mat::Identity(dim, dim);
  if (validation_directions > 0) {
    const Mat dirs = direction_grid(dim, validation_directions).directions;
    for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
      const Vec u = dirs.col(j);
      if (!(b.radial(u) > 0)) throw NonConvexPoint("smooth_star: radial function is not positive");
      boundary_frame(b, UnitVector::normalized(u));  // throws NonConvexPoint
    }
  }
  return b;
}

RadialBody RadialBody::rotated(const Mat& T) const {
  RadialBody b = *this;
  b.orient_ = T * orient_;
  return b;
}

double RadialBody::local_radial(const Vec& y) const {
  switch (kind_) {
    case BodyKind::Ball: return r0_;
    case BodyKind::Ellipsoid: return 1.0 / (y.array() / semiaxes_.array()).matrix().norm();
    case BodyKind::SmoothStar: return r0_ + terms_(y);
  }
  return 0.0;
}

Vec RadialBody::local_radial_gradient(const Vec& y) const {
  switch (kind_) {
    case BodyKind::Ball: return Vec::Zero(y.size());
    case BodyKind::Ellipsoid: {
      const Vec w = (y.array() / semiaxes_.array().square()).matrix();
      const double q = (y.array() / semiaxes_.array()).matrix().squaredNorm();
      return -std::pow(q, -1.5) * w;
    }
    case BodyKind::SmoothStar: return terms_.gradient(y);
  }
  return Vec::Zero(y.size());
}

double RadialBody::radial(const Vec& u) const { return local_radial(orient_.transpose() * u); }

double RadialBody::gap(const Vec& x) const {
  const double r = x.norm();
  return radial(x / r) - r;
}

Vec RadialBody::gauge_gradient(const Vec& x) const {
  const double r = x.norm();
  const Vec xh = x / r;
  const Vec grad_local = local_radial_gradient(orient_.transpose() * xh);
  const Vec grad = orient_ * grad_local;
  return xh - (grad - xh * xh.dot(grad)) / r;
}

std::pair<Vec, Mat> RadialBody::implicit_derivatives(const Vec& x) const {
  switch (kind_) {
    case BodyKind::Ball: {
      const double r = x.norm();
      const Vec xh = x / r;
      return {xh, (Mat::Identity(dim_, dim_) - xh * xh.transpose()) / r};
    }
    case BodyKind::Ellipsoid: {
      const Vec y = orient_.transpose() * x;
      const Vec inv2 = semiaxes_.array().square().inverse().matrix();
      const Vec g = orient_ * (2.0 * y.cwiseProduct(inv2));
      const Mat h = orient_ * (2.0 * inv2).asDiagonal() * orient_.transpose();
      return {g, h};
    }
    case BodyKind::SmoothStar: break;
  }
  throw UnsupportedCombination("implicit_derivatives: no analytic Hessian for smooth_star bodies");
}

PerturbationFamily::PerturbationFamily(RadialBody base, Polynomial rate, double proportional_rate,
                                       Polynomial second_order)
    : base_(std::move(base)),
      rate_(std::move(rate)),
      proportional_(proportional_rate),
      second_(std::move(second_order)),
      orient_(Mat::Identity(base_.dimension(), base_.dimension())) {}

PerturbationFamily PerturbationFamily::rotated(const Mat& T) const {
  PerturbationFamily f = *this;
  f.base_ = base_.rotated(T);
  f.orient_ = T * orient_;
  return f;
}

double PerturbationFamily::radial(double t, const Vec& u) const {
  const Vec y = orient_.transpose() * u;
  double r = base_.radial(u) * (1.0 + proportional_ * t);
  if (!rate_.empty()) r += t * rate_(y);
  if (!second_.empty()) r += t * t * second_(y);
  return r;
}

double PerturbationFamily::rate(const Vec& u) const {
  const Vec y = orient_.transpose() * u;
  double r = proportional_ * base_.radial(u);
  if (!rate_.empty()) r += rate_(y);
  return r;
}

double PerturbationFamily::gap(double t, const Vec& x) const {
  const double r = x.norm();
  return radial(t, x / r) - r;
}

void PerturbationFamily::validate(const Mat& directions) const {
  constexpr double tau = 1e-3;
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    const Vec u = directions.col(j);
    const double r0 = radial(0.0, u);
    if (rate(u) < -1e-9) throw NegativeSpeed("perturbation rate is negative at a sampled direction");
    for (double t : {tau, 0.25, 0.5, 1.0}) {
      if (radial(t, u) - r0 < -1e-9) throw NegativeSpeed("K^t does not contain K at a sampled direction");
    }
    const double second = (radial(2 * tau, u) - 2 * radial(tau, u) + r0) / (tau * tau);
    if (!std::isfinite(second) || std::abs(second) > 1e6) {
      throw NumericalError("perturbation family is not C^2 in t at a sampled direction");
    }
  }
}

namespace {

Mat graph_hessian_fd(const RadialBody& body, const BoundaryFrame& frame, double h) {
  const Eigen::Index n = frame.tangent.cols();
  Mat hess(n, n);
  const double f0 = 0.0;
  auto f = [&](const Vec& z) { return graph_height(body, frame, z); };
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e(i) = h;
    hess(i, i) = (f(e) + f(-e) - 2 * f0) / (h * h);
    for (Eigen::Index j = 0; j < i; ++j) {
      Vec a = Vec::Zero(n);
      Vec b = Vec::Zero(n);
      a(i) = h;
      a(j) = h;
      b(i) = h;
      b(j) = -h;
      const double v = (f(a) - f(b) - f(-b) + f(-a)) / (4 * h * h);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

}  // namespace

double graph_height(const RadialBody& body, const BoundaryFrame& frame, const Vec& z) {
  const Vec base = frame.point + frame.tangent * z;
  auto phi = [&](double s) { return body.gap(base - s * frame.normal); };
  if (phi(0.0) >= 0.0) return 0.0;
  double hi = std::max(z.norm(), 1e-300);
  int guard = 0;
  while (phi(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) throw NumericalError("graph_height: could not bracket the boundary");
  }
  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::max(std::abs(a), std::abs(b)); };
  const auto [lo_r, hi_r] = boost::math::tools::toms748_solve(phi, 0.0, hi, tol, iters);
  return 0.5 * (lo_r + hi_r);
}

BoundaryFrame boundary_frame(const RadialBody& body, const UnitVector& u, FrameMethod method) {
  return boundary_frame_in(body, u, Mat::Identity(body.dimension(), body.dimension()), method);
}

BoundaryFrame boundary_frame_in(const RadialBody& body, const UnitVector& u, const Mat& subspace,
                                FrameMethod method) {
  if (u.dim() != body.dimension() || subspace.rows() != body.dimension()) {
    throw DimensionMismatch("boundary_frame: direction / subspace dimension differs from the body");
  }
  BoundaryFrame fr;
  fr.direction = u.vec();
  fr.radius = body.radial(u.vec());
  fr.point = fr.radius * u.vec();
  fr.subspace = subspace;
  const Mat proj = subspace * subspace.transpose();
  const Vec g = proj * body.gauge_gradient(fr.point);
  fr.normal = g.normalized();
  fr.tangent = orthonormal_complement_in(fr.normal, subspace);

  if (method == FrameMethod::Auto && body.has_analytic_hessian()) {
    const auto [grad, hess] = body.implicit_derivatives(fr.point);
    const double gnorm = (proj * grad).norm();
    fr.form = fr.tangent.transpose() * hess * fr.tangent / (2.0 * gnorm);
  } else {
    const double h = 1e-4 * fr.radius;
    const Mat q1 = 0.5 * graph_hessian_fd(body, fr, h);
    const Mat q2 = 0.5 * graph_hessian_fd(body, fr, 0.5 * h);
    const double scale = std::max(q2.norm(), 1e-300);
    if ((q1 - q2).norm() > 1e-5 * scale) {
      throw NumericalError("boundary_frame: finite-difference Hessian failed its half-step check");
    }
    fr.form = 0.5 * (q1 + q1.transpose());
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(fr.form);
  if (es.eigenvalues().minCoeff() <= 1e-9) {
    std::ostringstream msg;
    msg << "boundary point is not C^2_+ (smallest Dupin eigenvalue " << es.eigenvalues().minCoeff() << ")";
    throw NonConvexPoint(msg.str());
  }
  return fr;
}

double DupinForm::support(const Vec& theta) const {
  const Vec local = axes.transpose() * theta;
  return (local.array() * semiaxes.array()).matrix().norm();
}

DupinForm dupin_hull(const Mat& form) {
  Eigen::SelfAdjointEigenSolver<Mat> es(form);
  if (es.eigenvalues().minCoeff() <= 1e-9) throw NonConvexPoint("dupin_hull: form is not positive definite");
  DupinForm e;
  e.form = form;
  e.semiaxes = es.eigenvalues().array().rsqrt();
  e.axes = es.eigenvectors();
  e.tangent = Mat::Identity(form.rows(), form.cols());
  e.origin = Vec::Zero(form.rows());
  return e;
}

DupinForm dupin_hull(const BoundaryFrame& frame) {
  DupinForm e = dupin_hull(frame.form);
  e.tangent = frame.tangent;
  e.origin = frame.point;
  return e;
}

double ground_truth_c(const PerturbationFamily& family, const BoundaryFrame& frame) {
  const double c = family.rate(frame.direction) * frame.obliquity();
  if (c < -1e-9) throw NegativeSpeed("ground_truth_c: negative normal speed");
  return std::max(c, 0.0);
}

double ground_truth_c(const PerturbationFamily& family, const UnitVector& u) {
  return ground_truth_c(family, boundary_frame(family.base(), u));
}

double radial_derivative_from_c(const BoundaryFrame& frame, double c_hat) {
  const double cosine = frame.obliquity();
  if (cosine <= 1e-9) throw Error("radial_derivative_from_c: <u, nu> must be positive");
  return c_hat / cosine;
}

}  // namespace tansec
