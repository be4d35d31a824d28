#pragma once

// Convex bodies given by radial functions, their one-parameter perturbation
// families, and the local boundary geometry (graph frame, Dupin indicatrix)
// at a boundary point.

#include "tansec/ellipsoid.hpp"
#include "tansec/linalg.hpp"

#include <string_view>
#include <vector>

namespace tansec {

class UnitVector {
 public:
  /// Requires | ||v|| - 1 | <= 1e-12.
  explicit UnitVector(Vec v);
  static UnitVector normalized(const Vec& v);

  const Vec& vec() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](Eigen::Index i) const { return v_(i); }

 private:
  Vec v_;
};

struct Monomial {
  double coeff = 0.0;
  std::vector<int> powers;  // missing trailing powers are zero
};

/// Polynomial in the coordinates of a vector.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Monomial> terms);
  static Polynomial constant(double c);

  double operator()(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  bool empty() const { return terms_.empty(); }
  const std::vector<Monomial>& terms() const { return terms_; }

 private:
  std::vector<Monomial> terms_;
};

enum class BodyKind { Ball, Ellipsoid, SmoothStar };

std::string_view to_string(BodyKind kind);

/// A C^2_+ convex body containing the origin, described by its radial
/// function rho(u) = max{ r : r u in K }.
class RadialBody {
 public:
  static RadialBody ball(int dim, double radius = 1.0);
  static RadialBody ellipsoid(const Vec& semiaxes);
  /// rho(u) = r0 + P(u). Rejects inputs that are not C^2_+ on a direction
  /// grid of `validation_directions` points (0 disables the scan).
  static RadialBody smooth_star(int dim, double r0, Polynomial terms, int validation_directions = 256);

  /// The body T K for an orthogonal T.
  RadialBody rotated(const Mat& T) const;

  int dimension() const { return dim_; }
  BodyKind kind() const { return kind_; }
  const Mat& orientation() const { return orient_; }
  const Vec& semiaxes() const { return semiaxes_; }
  double base_radius() const { return r0_; }
  const Polynomial& terms() const { return terms_; }

  double radial(const Vec& u) const;
  /// rho(x/|x|) - |x|; positive strictly inside.
  double gap(const Vec& x) const;
  /// Gradient of |x| - rho(x/|x|), an outward normal direction on bd K.
  Vec gauge_gradient(const Vec& x) const;

  bool has_analytic_hessian() const { return kind_ != BodyKind::SmoothStar; }
  /// Gradient and Hessian of an implicit function vanishing on bd K and
  /// increasing outwards (ball and ellipsoid only).
  std::pair<Vec, Mat> implicit_derivatives(const Vec& x) const;

 private:
  RadialBody() = default;
  double local_radial(const Vec& y) const;
  Vec local_radial_gradient(const Vec& y) const;  // of the extension to R^d

  int dim_ = 0;
  BodyKind kind_ = BodyKind::Ball;
  double r0_ = 1.0;
  Vec semiaxes_;
  Polynomial terms_;
  Mat orient_;
};

/// rho^t(u) = rho(u) (1 + proportional t) + t h(u) + t^2 r(u), t in [0, 1].
class PerturbationFamily {
 public:
  PerturbationFamily(RadialBody base, Polynomial rate, double proportional_rate = 0.0,
                     Polynomial second_order = {});

  /// The family T K^t for an orthogonal T.
  PerturbationFamily rotated(const Mat& T) const;

  const RadialBody& base() const { return base_; }
  int dimension() const { return base_.dimension(); }

  double radial(double t, const Vec& u) const;
  /// d rho^t(u) / dt at t = 0.
  double rate(const Vec& u) const;
  /// rho^t(x/|x|) - |x|; positive strictly inside K^t.
  double gap(double t, const Vec& x) const;

  /// Checks rho^t >= rho, non-negative rate and bounded second t-derivative
  /// on the given directions. Throws NegativeSpeed on violation.
  void validate(const Mat& directions) const;

 private:
  RadialBody base_;
  Polynomial rate_;
  double proportional_ = 0.0;
  Polynomial second_;
  Mat orient_;
};

enum class FrameMethod { Auto, FiniteDifference };

/// Local graph frame at x = rho(u) u: outer normal, orthonormal tangent
/// basis, and Q = (1/2) Hessian of the graph function over the tangent plane.
/// All vectors are ambient; for a restricted body they live in `subspace`.
struct BoundaryFrame {
  Vec direction;
  double radius = 0.0;
  Vec point;
  Vec normal;
  Mat tangent;
  Mat subspace;
  Mat form;

  /// Coordinates of an ambient tangent vector in the tangent basis.
  Vec local(const Vec& z) const { return tangent.transpose() * z; }
  /// <u, nu>, the radial-to-normal transition factor.
  double obliquity() const { return direction.dot(normal); }
};

BoundaryFrame boundary_frame(const RadialBody& body, const UnitVector& u,
                             FrameMethod method = FrameMethod::Auto);

/// Frame of K cap L at u, where L = span(subspace) contains u. Normal and
/// tangents lie in L and Q is (n-1) x (n-1) with n = dim L.
BoundaryFrame boundary_frame_in(const RadialBody& body, const UnitVector& u, const Mat& subspace,
                                FrameMethod method = FrameMethod::Auto);

/// Graph function f(z) of bd K over the tangent plane of `frame` (measured
/// along the inward normal), solved by bracketed root finding.
double graph_height(const RadialBody& body, const BoundaryFrame& frame, const Vec& z);

/// Convex hull of the Dupin indicatrix {z : z^T Q z <= 1}.
struct DupinForm {
  Mat form;
  Vec semiaxes;
  Mat axes;     // eigenvectors of Q, frame coordinates
  Mat tangent;  // ambient basis of the frame coordinates
  Vec origin;   // tangency point

  int dim() const { return static_cast<int>(semiaxes.size()); }
  EllipsoidSpec ellipsoid() const { return {Vec::Zero(dim()), semiaxes, axes}; }
  /// Support function in frame coordinates: sqrt(theta^T Q^{-1} theta).
  double support(const Vec& theta) const;
};

DupinForm dupin_hull(const BoundaryFrame& frame);
DupinForm dupin_hull(const Mat& form);

/// First-order outward normal speed c(x) = (d rho^t(u)/dt)|_0 <u, nu(x)>.
double ground_truth_c(const PerturbationFamily& family, const UnitVector& u);
double ground_truth_c(const PerturbationFamily& family, const BoundaryFrame& frame);

/// Inverse of ground_truth_c: c / <u, nu(x)>.
double radial_derivative_from_c(const BoundaryFrame& frame, double c_hat);

}  // namespace tansec
