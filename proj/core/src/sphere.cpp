#include "tansec/sphere.hpp"

#include "tansec/errors.hpp"
#include "tansec/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tansec {

std::pair<Vec, Vec> gauss_legendre(int n) {
  Mat jacobi = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(jacobi);
  Vec nodes = es.eigenvalues();
  Vec weights = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return {nodes, weights};
}

Mat circle_grid(int n, double phase) {
  Mat out(2, n);
  for (int j = 0; j < n; ++j) {
    const double a = 2.0 * std::numbers::pi * (j + phase) / n;
    out(0, j) = std::cos(a);
    out(1, j) = std::sin(a);
  }
  return out;
}

Mat fibonacci_sphere(int n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  Mat out(3, n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out(0, i) = r * std::cos(phi);
    out(1, i) = r * std::sin(phi);
    out(2, i) = z;
  }
  return out;
}

WeightedDirections product_sphere_grid(int dim, int per_angle) {
  if (dim < 2) throw DimensionMismatch("product_sphere_grid needs dim >= 2");
  if (dim == 2) {
    const int n = 2 * per_angle;
    return {circle_grid(n, 0.5), Vec::Constant(n, 1.0 / n)};
  }
  const WeightedDirections lower = product_sphere_grid(dim - 1, per_angle);
  const auto [x, w] = gauss_legendre(per_angle);
  const Eigen::Index m = lower.directions.cols();
  WeightedDirections out{Mat(dim, per_angle * m), Vec(per_angle * m)};
  Eigen::Index col = 0;
  for (int j = 0; j < per_angle; ++j) {
    const double psi = 0.5 * std::numbers::pi * (1.0 + x(j));
    const double s = std::sin(psi);
    const double wpsi = w(j) * std::pow(s, dim - 2);
    for (Eigen::Index i = 0; i < m; ++i, ++col) {
      out.directions(0, col) = std::cos(psi);
      out.directions.col(col).tail(dim - 1) = s * lower.directions.col(i);
      out.weights(col) = wpsi * lower.weights(i);
    }
  }
  out.weights /= out.weights.sum();
  return out;
}

WeightedDirections direction_grid(int dim, int n) {
  if (dim == 2) return {circle_grid(n, 0.0), Vec::Constant(n, 1.0 / n)};
  if (dim == 3) return {fibonacci_sphere(n), Vec::Constant(n, 1.0 / n)};
  const int per = std::max(2, static_cast<int>(std::ceil(std::pow(0.5 * n, 1.0 / (dim - 1)))));
  return product_sphere_grid(dim, per);
}

Mat random_directions(int dim, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Mat out(dim, n);
  for (int j = 0; j < n; ++j) {
    double norm = 0.0;
    do {
      for (int i = 0; i < dim; ++i) out(i, j) = normal(rng);
      norm = out.col(j).norm();
    } while (norm < 1e-12);
    out.col(j) /= norm;
  }
  return out;
}

SphereMesh fibonacci_mesh(int n) {
  SphereMesh mesh{fibonacci_sphere(n), {}};
  mesh.triangles = convex_hull_3d(mesh.vertices).faces;
  return mesh;
}

double covering_angle(const Mat& grid, const Mat& probes) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < probes.cols(); ++j) {
    const double best = (grid.transpose() * probes.col(j)).maxCoeff();
    worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return worst;
}

}  // namespace tansec
