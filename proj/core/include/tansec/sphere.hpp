#pragma once

#include "tansec/linalg.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace tansec {

/// Unit directions stored column-wise with quadrature weights summing to 1.
struct WeightedDirections {
  Mat directions;
  Vec weights;
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
std::pair<Vec, Vec> gauss_legendre(int n);

/// n equally spaced directions on S^1 at angles 2*pi*(j + phase)/n.
Mat circle_grid(int n, double phase = 0.0);

/// Fibonacci (golden-angle) lattice of n points on S^2.
Mat fibonacci_sphere(int n);

/// Tensor-product grid on S^{dim-1} in hyperspherical angles: Gauss-Legendre
/// in each polar angle (weighted by the sin^j Jacobian) and a uniform grid in
/// the azimuth.
WeightedDirections product_sphere_grid(int dim, int per_angle);

/// Default direction grid: uniform angles for dim = 2, Fibonacci for dim = 3,
/// tensor product with about n nodes for dim > 3.
WeightedDirections direction_grid(int dim, int n);

/// Seeded uniform random directions on S^{dim-1}.
Mat random_directions(int dim, int n, std::uint64_t seed);

/// Triangulated sphere: Fibonacci vertices, triangles of their convex hull
/// (the spherical Delaunay triangulation), outward oriented.
struct SphereMesh {
  Mat vertices;
  std::vector<std::array<int, 3>> triangles;
};

SphereMesh fibonacci_mesh(int n);

/// Largest angle between any probe direction and its nearest grid direction.
double covering_angle(const Mat& grid, const Mat& probes);

}  // namespace tansec
