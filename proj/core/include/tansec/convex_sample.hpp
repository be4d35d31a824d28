#pragma once

#include "tansec/body_models.hpp"
#include "tansec/sphere.hpp"
#include "tansec/tangent_geometry.hpp"

#include <cstdint>
#include <functional>
#include <ostream>

namespace tansec {

enum class SampleScheme { Exact, MonteCarlo };

/// Star-shaped point representation of a convex body of intrinsic dimension
/// m living in an affine m-flat of R^d. Boundary point i sits at local
/// coordinates radii(i) * w_i, w_i = shape * ref_dirs.col(i) / |...|.
struct ConvexSample {
  int ambient_dim = 0;
  int dim = 0;
  Vec anchor;
  Mat frame;     // ambient x dim, orthonormal
  Mat points;    // dim x M, local coordinates relative to the anchor
  Mat ref_dirs;  // dim x M, unit reference directions
  Mat shape;     // dim x dim affine adaptation
  Vec radii;
  SphereMesh mesh;  // triangulation of ref_dirs (dim = 3, exact scheme)
  SampleScheme scheme = SampleScheme::Exact;
  std::uint64_t seed = 0;
  bool degenerate = false;

  int count() const { return static_cast<int>(points.cols()); }
  /// The sample of lambda * (body - anchor) + anchor.
  ConvexSample scaled(double lambda) const;
  /// max_i <points_i, theta> in local coordinates.
  double support(const Vec& theta) const;
  Vec ambient_point(Eigen::Index i) const { return anchor + frame * points.col(i); }
};

struct SamplingOptions {
  int rays = 0;                 // 0: 512 for m <= 2, 2048 for m = 3, mc_rays otherwise
  int mc_rays = 8192;
  bool force_monte_carlo = false;
  double patch_factor = 0.5;    // patch radius as a fraction of rho(u)
  double root_tol = 1e-12;
  std::uint64_t seed = 0;
};

/// Builds a sample of the convex set {p : inside(p) > 0} of dimension m
/// in the flat anchor + span(frame) by ray shooting from the anchor.
/// `inside` must be positive at the anchor. Rays leaving the ball of radius
/// `patch` throw EpsilonTooLarge.
using InsideFn = std::function<double(const Vec&)>;

ConvexSample ray_sample(const InsideFn& inside, const Vec& anchor, const Mat& frame, double patch,
                        const SamplingOptions& opt);

/// K^eps cap Y, anchored at the tangency point of Y.
ConvexSample section_body(const PerturbationFamily& family, const AffineFlat& flat, double eps,
                          const SamplingOptions& opt = {});

/// K^eps cap H^+, H a tangent hyperplane (flat.dim = d - 1).
ConvexSample cap_body(const PerturbationFamily& family, const AffineFlat& flat, double eps,
                      const SamplingOptions& opt = {});

/// Sample of E' = {(z, h) : -1 + z^T Q z <= h <= 0}, Q of size (d-1).
ConvexSample paraboloid_cap_sample(const Mat& form, const SamplingOptions& opt = {});

/// Sample of an ellipsoid in its own coordinates.
ConvexSample ellipsoid_sample(const EllipsoidSpec& spec, const SamplingOptions& opt = {});

/// Midpoints of `pairs` seeded random boundary pairs are inside the parent
/// set up to `tol`; returns the worst violation (<= 0 when convex).
double convexity_spot_check(const ConvexSample& s, const InsideFn& inside, int pairs, std::uint64_t seed);

/// Boundary points as CSV (ambient coordinates).
void write_sample_csv(std::ostream& out, const ConvexSample& s);

}  // namespace tansec
