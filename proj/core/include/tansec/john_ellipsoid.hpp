#pragma once

#include "tansec/linalg.hpp"

namespace tansec {

/// Maximum-volume ellipsoid {center + B x : |x| <= 1} inscribed in the
/// convex hull of an m x n point set, m <= 3.
struct InscribedEllipsoid {
  Vec center;
  Mat shape;  // B, symmetric positive definite
  double volume = 0.0;
  int newton_steps = 0;
};

InscribedEllipsoid max_inscribed_ellipsoid(const Mat& points, double tol = 1e-7);

/// Halfspace form {x : a_i^T x <= b_i} of the hull of an m x n point set
/// (rows of A are unit normals).
struct HalfspaceForm {
  Mat normals;  // n_faces x m
  Vec offsets;
};

HalfspaceForm hull_halfspaces(const Mat& points);

}  // namespace tansec
