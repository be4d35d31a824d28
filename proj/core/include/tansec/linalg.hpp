#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace tansec {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Volume of the unit ball in R^m (kappa_m); kappa_0 = 1.
double unit_ball_volume(int m);

/// Surface area of S^{m-1}, i.e. m * kappa_m.
double unit_sphere_area(int m);

double binomial(int n, int k);

/// max |B^T B - I| over all entries.
double orthonormality_defect(const Mat& basis);

/// Orthonormal basis (ambient x (ambient - cols)) of the orthogonal complement
/// of span(basis). Deterministic: built from a Householder QR.
Mat orthonormal_complement(const Mat& basis);

/// Orthonormal basis of the complement of `v` inside span(subspace), returned
/// in ambient coordinates (ambient x (n - 1)).
Mat orthonormal_complement_in(const Vec& v, const Mat& subspace);

/// Orthonormalize the columns of `basis` (Householder QR, signs fixed so that
/// the diagonal of R is positive).
Mat orthonormalize(const Mat& basis);

/// Stable 64-bit mixing of a seed with task coordinates (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tansec
