#pragma once

#include "tansec/linalg.hpp"

namespace tansec {

/// Solid ellipsoid center + axes * diag(semiaxes) * B^m, in the coordinates of
/// whatever flat it lives in.
struct EllipsoidSpec {
  Vec center;
  Vec semiaxes;
  Mat axes;  // orthonormal columns

  int dim() const { return static_cast<int>(semiaxes.size()); }

  static EllipsoidSpec axis_aligned(const Vec& semiaxes) {
    return {Vec::Zero(semiaxes.size()), semiaxes, Mat::Identity(semiaxes.size(), semiaxes.size())};
  }

  /// Distance from the center to the boundary along unit direction w.
  double ray_length(const Vec& w) const {
    const Vec local = axes.transpose() * w;
    return 1.0 / (local.array() / semiaxes.array()).matrix().norm();
  }

  double support(const Vec& theta) const {
    const Vec local = axes.transpose() * theta;
    return center.dot(theta) + (local.array() * semiaxes.array()).matrix().norm();
  }
};

}  // namespace tansec
