#pragma once

#include "tansec/linalg.hpp"

#include <array>
#include <vector>

namespace tansec {

/// Counter-clockwise hull vertex indices of a 2 x n point set (Andrew's
/// monotone chain). Collinear points are dropped.
std::vector<int> convex_hull_2d(const Mat& points);

double polygon_area(const Mat& points, const std::vector<int>& ccw);
double polygon_perimeter(const Mat& points, const std::vector<int>& ccw);

/// Outward-oriented triangular facets of the convex hull of a 3 x n point set.
struct Hull3 {
  std::vector<std::array<int, 3>> faces;
};

/// Quickhull. Throws Error if the points are (numerically) coplanar.
Hull3 convex_hull_3d(const Mat& points);

double hull_volume(const Mat& points, const Hull3& hull);
double hull_area(const Mat& points, const Hull3& hull);

}  // namespace tansec
