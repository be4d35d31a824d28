#pragma once

#include "tansec/convex_sample.hpp"

#include <string>
#include <string_view>

namespace tansec {

struct Measurement {
  double value = 0.0;
  double std_error = 0.0;
};

struct MeasureOptions {
  int support_directions = 2048;  // V_1 quadrature nodes
  int kubota_frames = 512;        // random k-frames for 1 < k < m (Monte Carlo scheme)
};

/// V_k of the sampled body, 1 <= k <= m. Exact-scheme samples (m <= 3) are
/// measured through their hull; Monte Carlo samples report a standard error.
Measurement intrinsic_volume(const ConvexSample& sample, int k, const MeasureOptions& opt = {});

/// V_1 of the hull of an m x n point cloud by mean-width quadrature over
/// the given unit directions (standard error from the spread of widths).
Measurement point_cloud_v1(const Mat& points, const Mat& directions);

/// V_k of the hull of an m x n point cloud by projection averaging over
/// `frames` seeded random k-frames, 1 <= k <= min(m, 3).
Measurement point_cloud_kubota(const Mat& points, int k, int frames, std::uint64_t seed);

/// V_k of an ellipsoid: closed form for k = m, spectral quadrature for
/// k = 1 and k = m - 1, seeded Monte Carlo over Gr(m, k) otherwise.
double ellipsoid_intrinsic_volume(const EllipsoidSpec& spec, int k);

enum class FunctionalKind { IntrinsicVolume, MeanWidthPower, JohnEllipsoidVolume };

std::string_view to_string(FunctionalKind kind);
FunctionalKind parse_functional_kind(std::string_view name);

/// Monotone, positively homogeneous functional of degree `degree`.
struct FunctionalDescriptor {
  FunctionalKind kind = FunctionalKind::IntrinsicVolume;
  int degree = 1;

  /// Throws UnsupportedCombination / DimensionMismatch for invalid pairs.
  void validate(int m) const;
  /// True for functionals that scale like the m-volume (V_m, John volume).
  bool volume_type(int m) const;
  std::string label() const;
};

Measurement functional_value(const ConvexSample& sample, const FunctionalDescriptor& f,
                             const MeasureOptions& opt = {});

/// The functional evaluated on an ellipsoid.
double functional_of_ellipsoid(const EllipsoidSpec& spec, const FunctionalDescriptor& f);

/// The functional evaluated on E' = {-1 + z^T Q z <= h <= 0}; volume-type
/// functionals only.
double functional_of_paraboloid_cap(const Mat& form, const FunctionalDescriptor& f);

struct SandwichResult {
  bool holds = false;
  double lower_margin = 0.0;  // min_theta h_S - h_inner (>= -tol when included)
  double upper_margin = 0.0;  // min_theta h_outer - h_S
  double tolerance = 0.0;
};

/// Support-function test of (c1 eps)^{1/2} E ⊂ S ⊂ (c2 eps)^{1/2} E with E
/// centered at the sample anchor; c1 <= 0 skips the lower inclusion.
SandwichResult sandwich_check(const ConvexSample& sample, const DupinForm& dupin, double c1, double c2,
                              double eps, int directions = 1024);

/// vol{-c eps + z^T Q z <= h <= 0} / vol of its circumscribed right cylinder,
/// by numerical quadrature.
double paraboloid_cap_ratio(const Mat& form, double c, double eps);

/// Leading-order cap volume vol(E) (2/(d+1)) (c eps)^{(d+1)/2}.
double cap_volume_asymptote(const Mat& form, double c, double eps);

}  // namespace tansec
