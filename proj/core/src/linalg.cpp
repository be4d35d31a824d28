#include "tansec/linalg.hpp"

#include <cmath>
#include <numbers>

namespace tansec {

double unit_ball_volume(int m) {
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double unit_sphere_area(int m) { return m * unit_ball_volume(m); }

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double orthonormality_defect(const Mat& basis) {
  const Mat g = basis.transpose() * basis - Mat::Identity(basis.cols(), basis.cols());
  return g.cwiseAbs().maxCoeff();
}

Mat orthonormalize(const Mat& basis) {
  Eigen::HouseholderQR<Mat> qr(basis);
  Mat q = qr.householderQ() * Mat::Identity(basis.rows(), basis.cols());
  const Mat r = qr.matrixQR().topLeftCorner(basis.cols(), basis.cols());
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Mat orthonormal_complement(const Mat& basis) {
  const Eigen::Index d = basis.rows();
  const Eigen::Index k = basis.cols();
  if (k == 0) return Mat::Identity(d, d);
  Eigen::HouseholderQR<Mat> qr(basis);
  const Mat q = qr.householderQ() * Mat::Identity(d, d);
  return q.rightCols(d - k);
}

Mat orthonormal_complement_in(const Vec& v, const Mat& subspace) {
  const Vec coords = subspace.transpose() * v;
  const Mat local = orthonormal_complement(coords);
  return subspace * local;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

}  // namespace tansec
