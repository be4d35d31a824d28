#pragma once

#include "tansec/body_models.hpp"

#include <ostream>
#include <vector>

namespace tansec {

/// Affine l-plane base + span(basis). Tangent flats also carry the linear
/// subspace L they were generated in and the boundary frame of K cap L.
struct AffineFlat {
  int id = 0;
  int dim = 0;
  int ambient = 0;
  Vec base;
  Mat basis;     // ambient x dim
  Vec tangency;  // unit direction u with base = rho(u) u
  Mat span;      // ambient x (dim + 1), orthonormal basis of L
  BoundaryFrame frame;

  Vec normal() const { return frame.normal; }
};

/// Linear (l+1)-subspaces containing a fixed linear l-subspace.
class SubspacePencil {
 public:
  /// Subspaces span(fixed, w) for w in the unit sphere of the orthogonal
  /// complement, taken modulo sign. The complement sphere is sampled with
  /// `rotations` points: equally spaced angles in [0, pi) when it is a
  /// circle, a hemisphere of a direction grid otherwise.
  static SubspacePencil about(const Mat& fixed, int rotations = 64);
  /// The degenerate pencil {R^d} used for l = d - 1.
  static SubspacePencil whole_space(int d);

  int ambient() const { return ambient_; }
  int fixed_dim() const { return static_cast<int>(fixed_.cols()); }
  const Mat& fixed() const { return fixed_; }
  const std::vector<Mat>& subspaces() const { return subspaces_; }
  /// Manifold dimension of the sampled family, d - l - 1.
  int parameter_dim() const;

 private:
  int ambient_ = 0;
  Mat fixed_;
  std::vector<Mat> subspaces_;
};

/// K cap L expressed in an orthonormal basis of L.
class RestrictedBody {
 public:
  RestrictedBody(RadialBody parent, Mat subspace);

  int dimension() const { return static_cast<int>(subspace_.cols()); }
  const RadialBody& parent() const { return parent_; }
  const Mat& subspace() const { return subspace_; }
  Vec embed(const Vec& v) const { return subspace_ * v; }
  double radial(const Vec& v) const { return parent_.radial(embed(v)); }

 private:
  RadialBody parent_;
  Mat subspace_;
};

class RestrictedFamily {
 public:
  RestrictedFamily(PerturbationFamily parent, Mat subspace);

  int dimension() const { return static_cast<int>(subspace_.cols()); }
  const PerturbationFamily& parent() const { return parent_; }
  const Mat& subspace() const { return subspace_; }
  RestrictedBody base() const { return RestrictedBody(parent_.base(), subspace_); }
  double radial(double t, const Vec& v) const { return parent_.radial(t, subspace_ * v); }
  double rate(const Vec& v) const { return parent_.rate(subspace_ * v); }

 private:
  PerturbationFamily parent_;
  Mat subspace_;
};

/// Throws BadSubspace if the basis is not orthonormal within 1e-10.
RestrictedBody restrict(const RadialBody& body, const Mat& subspace);
RestrictedFamily restrict(const PerturbationFamily& family, const Mat& subspace);

/// Tangent l-flats of K cap L inside each L of the pencil, one per sampled
/// boundary direction of L (`per_subspace_samples` directions, 0 selects
/// 256 for dim L = 2 and 1024 for dim L = 3). Ids are consecutive.
std::vector<AffineFlat> tangent_flats(const RadialBody& body, int l, const SubspacePencil& pencil,
                                      int per_subspace_samples = 0);

/// Tangent hyperplanes at explicitly given directions (l = d - 1).
std::vector<AffineFlat> tangent_hyperplanes(const RadialBody& body, const Mat& directions);

/// Union of a direction grid with its image under an orthogonal T, without
/// duplicates (angular tolerance `tol`).
Mat close_under(const Mat& directions, const Mat& T, double tol = 1e-9);

struct FlatCountReport {
  int pencil_dim = 0;
  int tangency_dim = 0;
  int total_dim = 0;
  int grassmannian_dim = 0;
  bool grassmannian_exceeds = false;
};

FlatCountReport flat_count_manifold_check(int l, int d);

/// One row per flat: id, u, base point, basis vectors (column-major).
void write_flats_csv(std::ostream& out, const std::vector<AffineFlat>& flats);

}  // namespace tansec
