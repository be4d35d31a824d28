#include "tansec/john_ellipsoid.hpp"

#include "tansec/errors.hpp"
#include "tansec/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace tansec {

HalfspaceForm hull_halfspaces(const Mat& points) {
  const Eigen::Index m = points.rows();
  HalfspaceForm h;
  if (m == 1) {
    h.normals = Mat(2, 1);
    h.normals << 1.0, -1.0;
    h.offsets = Vec(2);
    h.offsets << points.maxCoeff(), -points.minCoeff();
  } else if (m == 2) {
    const std::vector<int> ccw = convex_hull_2d(points);
    const auto n = static_cast<Eigen::Index>(ccw.size());
    h.normals.resize(n, 2);
    h.offsets.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec a = points.col(ccw[i]);
      const Vec b = points.col(ccw[(i + 1) % n]);
      Vec nrm(2);
      nrm << b(1) - a(1), a(0) - b(0);
      nrm.normalize();
      h.normals.row(i) = nrm.transpose();
      h.offsets(i) = nrm.dot(a);
    }
  } else if (m == 3) {
    const Hull3 hull = convex_hull_3d(points);
    const auto n = static_cast<Eigen::Index>(hull.faces.size());
    h.normals.resize(n, 3);
    h.offsets.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& f = hull.faces[i];
      const Eigen::Vector3d a = points.col(f[0]);
      const Eigen::Vector3d b = points.col(f[1]);
      const Eigen::Vector3d c = points.col(f[2]);
      const Eigen::Vector3d nrm = (b - a).cross(c - a).normalized();
      h.normals.row(i) = nrm.transpose();
      h.offsets(i) = nrm.dot(a);
    }
  } else {
    throw UnsupportedCombination("hull_halfspaces: dimension above 3");
  }
  return h;
}

namespace {

/// Barrier problem for max log det B subject to |B a_i| + a_i^T c <= b_i,
/// over x = (upper triangle of B, c).
class InscribedBarrier {
 public:
  explicit InscribedBarrier(const HalfspaceForm& h) : h_(h), m_(h.normals.cols()) {
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = i; j < m_; ++j) pairs_.emplace_back(i, j);
    }
    nb_ = static_cast<Eigen::Index>(pairs_.size());
  }

  Eigen::Index size() const { return nb_ + m_; }

  Mat shape(const Vec& x) const {
    Mat b = Mat::Zero(m_, m_);
    for (Eigen::Index p = 0; p < nb_; ++p) {
      const auto [i, j] = pairs_[p];
      b(i, j) = x(p);
      b(j, i) = x(p);
    }
    return b;
  }
  Vec center(const Vec& x) const { return x.tail(m_); }

  Vec pack(const Mat& b, const Vec& c) const {
    Vec x(size());
    for (Eigen::Index p = 0; p < nb_; ++p) x(p) = b(pairs_[p].first, pairs_[p].second);
    x.tail(m_) = c;
    return x;
  }

  /// t * (-log det B) - sum log s_i; +inf outside the domain.
  double value(const Vec& x, double t) const {
    const Mat b = shape(x);
    Eigen::LLT<Mat> llt(b);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Vec slack = slacks(b, center(x));
    if ((slack.array() <= 0).any()) return std::numeric_limits<double>::infinity();
    const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -t * logdet - slack.array().log().sum();
  }

  void derivatives(const Vec& x, double t, Vec& grad, Mat& hess) const {
    const Mat b = shape(x);
    const Vec c = center(x);
    const Mat binv = b.inverse();
    const Eigen::Index n = size();
    grad = Vec::Zero(n);
    hess = Mat::Zero(n, n);
    std::vector<Mat> basis(nb_);
    for (Eigen::Index p = 0; p < nb_; ++p) {
      basis[p] = Mat::Zero(m_, m_);
      basis[p](pairs_[p].first, pairs_[p].second) = 1.0;
      basis[p](pairs_[p].second, pairs_[p].first) = 1.0;
    }
    for (Eigen::Index p = 0; p < nb_; ++p) {
      const Mat bp = binv * basis[p];
      grad(p) -= t * bp.trace();
      for (Eigen::Index q = 0; q < nb_; ++q) hess(p, q) += t * (bp * binv * basis[q]).trace();
    }
    Mat g(m_, nb_);
    Vec dphi(n);
    for (Eigen::Index i = 0; i < h_.normals.rows(); ++i) {
      const Vec a = h_.normals.row(i).transpose();
      const Vec ba = b * a;
      const double nu = ba.norm();
      const double s = h_.offsets(i) - a.dot(c) - nu;
      for (Eigen::Index p = 0; p < nb_; ++p) g.col(p) = basis[p] * a;
      dphi.head(nb_) = g.transpose() * ba / nu;
      dphi.tail(m_) = a;
      grad += dphi / s;
      hess += dphi * dphi.transpose() / (s * s);
      const Mat curv = (Mat::Identity(m_, m_) - ba * ba.transpose() / (nu * nu)) / nu;
      hess.topLeftCorner(nb_, nb_) += g.transpose() * curv * g / s;
    }
  }

  Vec slacks(const Mat& b, const Vec& c) const {
    return h_.offsets - h_.normals * c - (h_.normals * b).rowwise().norm();
  }

 private:
  const HalfspaceForm& h_;
  Eigen::Index m_;
  Eigen::Index nb_ = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs_;
};

}  // namespace

InscribedEllipsoid max_inscribed_ellipsoid(const Mat& points, double tol) {
  const Eigen::Index m = points.rows();
  if (m < 1 || m > 3) throw UnsupportedCombination("max_inscribed_ellipsoid: dimension must be 1..3");
  if (points.cols() < m + 1) throw NumericalError("max_inscribed_ellipsoid: too few points");

  // The problem is affine equivariant, so solve it for whitened points.
  const Vec mean = points.rowwise().mean();
  const Mat centered = points.colwise() - mean;
  const Mat cov = centered * centered.transpose() / static_cast<double>(points.cols());
  Eigen::SelfAdjointEigenSolver<Mat> ces(cov);
  if (ces.eigenvalues().minCoeff() <= 1e-300) throw NumericalError("max_inscribed_ellipsoid: degenerate point set");
  const Mat whiten = ces.operatorInverseSqrt();
  const Mat unwhiten = ces.operatorSqrt();
  const Mat pts = whiten * centered;

  const HalfspaceForm h = hull_halfspaces(pts);
  if ((h.offsets.array() <= 0).any()) throw NumericalError("max_inscribed_ellipsoid: centroid is not interior");
  const InscribedBarrier barrier(h);
  Vec x = barrier.pack(0.5 * h.offsets.minCoeff() * Mat::Identity(m, m), Vec::Zero(m));

  const double constraints = static_cast<double>(h.offsets.size());
  double t = 1.0;
  int newton_steps = 0;
  Vec grad;
  Mat hess;
  for (;;) {
    for (int it = 0; it < 100; ++it) {
      barrier.derivatives(x, t, grad, hess);
      const Vec step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      ++newton_steps;
      if (decrement < 1e-12) break;
      const double f0 = barrier.value(x, t);
      double s = 1.0;
      while (barrier.value(x + s * step, t) > f0 - 0.25 * s * decrement) {
        s *= 0.5;
        if (s < 1e-14) break;
      }
      if (s < 1e-14) break;
      x += s * step;
    }
    if (constraints / t < tol * 1e-2) break;
    t *= 20.0;
  }

  const Mat b = barrier.shape(x);
  InscribedEllipsoid out;
  out.center = unwhiten * barrier.center(x) + mean;
  const Mat ub = unwhiten * b;
  out.shape = Eigen::SelfAdjointEigenSolver<Mat>(ub * ub.transpose()).operatorSqrt();
  out.volume = unit_ball_volume(static_cast<int>(m)) * b.determinant() * unwhiten.determinant();
  out.newton_steps = newton_steps;
  return out;
}

}  // namespace tansec
