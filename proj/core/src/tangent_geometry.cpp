#include "tansec/tangent_geometry.hpp"

#include "tansec/csv.hpp"
#include "tansec/errors.hpp"
#include "tansec/sphere.hpp"

#include <cmath>
#include <numbers>

namespace tansec {

namespace {

void check_orthonormal(const Mat& basis, int ambient) {
  if (basis.rows() != ambient) throw DimensionMismatch("subspace basis has the wrong ambient dimension");
  if (basis.cols() < 1) throw BadSubspace("subspace basis is empty");
  if (orthonormality_defect(basis) > 1e-10) throw BadSubspace("subspace basis is not orthonormal");
}

}  // namespace

SubspacePencil SubspacePencil::about(const Mat& fixed, int rotations) {
  const int d = static_cast<int>(fixed.rows());
  const int l = static_cast<int>(fixed.cols());
  if (l < 1 || l >= d) throw BadSubspace("pencil: fixed subspace must have dimension 1..d-1");
  if (orthonormality_defect(fixed) > 1e-10) throw BadSubspace("pencil: fixed basis is not orthonormal");
  SubspacePencil p;
  p.ambient_ = d;
  p.fixed_ = fixed;
  const Mat comp = orthonormal_complement(fixed);
  const int c = d - l;
  auto add = [&](const Vec& w) {
    Mat s(d, l + 1);
    s << fixed, comp * w;
    p.subspaces_.push_back(s);
  };
  if (c == 1) {
    add(Vec::Ones(1));
  } else if (c == 2) {
    for (int j = 0; j < rotations; ++j) {
      const double a = std::numbers::pi * j / rotations;
      Vec w(2);
      w << std::cos(a), std::sin(a);
      add(w);
    }
  } else {
    const Mat dirs = direction_grid(c, 2 * rotations).directions;
    for (Eigen::Index j = 0; j < dirs.cols(); ++j) {
      const Vec w = dirs.col(j);
      Eigen::Index lead = 0;
      w.cwiseAbs().maxCoeff(&lead);
      if (w(lead) > 0) add(w);
    }
  }
  return p;
}

SubspacePencil SubspacePencil::whole_space(int d) {
  SubspacePencil p;
  p.ambient_ = d;
  p.fixed_ = Mat::Identity(d, d - 1);
  p.subspaces_.push_back(Mat::Identity(d, d));
  return p;
}

int SubspacePencil::parameter_dim() const { return ambient_ - fixed_dim() - 1; }

RestrictedBody::RestrictedBody(RadialBody parent, Mat subspace)
    : parent_(std::move(parent)), subspace_(std::move(subspace)) {}

RestrictedFamily::RestrictedFamily(PerturbationFamily parent, Mat subspace)
    : parent_(std::move(parent)), subspace_(std::move(subspace)) {}

RestrictedBody restrict(const RadialBody& body, const Mat& subspace) {
  check_orthonormal(subspace, body.dimension());
  return RestrictedBody(body, subspace);
}

RestrictedFamily restrict(const PerturbationFamily& family, const Mat& subspace) {
  check_orthonormal(subspace, family.dimension());
  return RestrictedFamily(family, subspace);
}

namespace {

AffineFlat make_flat(const RadialBody& body, const Vec& u, const Mat& span, int id) {
  AffineFlat f;
  f.id = id;
  f.ambient = body.dimension();
  f.dim = static_cast<int>(span.cols()) - 1;
  f.span = span;
  f.frame = boundary_frame_in(body, UnitVector::normalized(u), span);
  f.tangency = f.frame.direction;
  f.base = f.frame.point;
  f.basis = f.frame.tangent;
  return f;
}

int default_samples(int dim_l) { return dim_l == 2 ? 256 : 1024; }

}  // namespace

std::vector<AffineFlat> tangent_flats(const RadialBody& body, int l, const SubspacePencil& pencil,
                                      int per_subspace_samples) {
  const int d = body.dimension();
  if (l < 1 || l > d - 1) throw DimensionMismatch("tangent_flats: l must satisfy 1 <= l <= d-1");
  if (pencil.ambient() != d) throw DimensionMismatch("tangent_flats: pencil ambient dimension differs");
  std::vector<AffineFlat> out;
  int id = 0;
  for (const Mat& span : pencil.subspaces()) {
    check_orthonormal(span, d);
    if (span.cols() != l + 1) throw DimensionMismatch("tangent_flats: pencil subspaces must have dimension l+1");
    const int n = per_subspace_samples > 0 ? per_subspace_samples : default_samples(l + 1);
    const Mat local = direction_grid(l + 1, n).directions;
    for (Eigen::Index j = 0; j < local.cols(); ++j) {
      out.push_back(make_flat(body, span * local.col(j), span, id++));
    }
  }
  return out;
}

std::vector<AffineFlat> tangent_hyperplanes(const RadialBody& body, const Mat& directions) {
  const int d = body.dimension();
  if (directions.rows() != d) throw DimensionMismatch("tangent_hyperplanes: direction dimension differs");
  const Mat span = Mat::Identity(d, d);
  std::vector<AffineFlat> out;
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    out.push_back(make_flat(body, directions.col(j), span, static_cast<int>(j)));
  }
  return out;
}

Mat close_under(const Mat& directions, const Mat& T, double tol) {
  std::vector<Vec> kept;
  auto present = [&](const Vec& v) {
    for (const Vec& k : kept) {
      if ((k - v).norm() <= tol) return true;
    }
    return false;
  };
  for (Eigen::Index j = 0; j < directions.cols(); ++j) {
    const Vec u = directions.col(j).normalized();
    if (!present(u)) kept.push_back(u);
  }
  const std::size_t n = kept.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec v = (T * kept[j]).normalized();
    if (!present(v)) kept.push_back(v);
  }
  Mat out(directions.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = kept[j];
  return out;
}

FlatCountReport flat_count_manifold_check(int l, int d) {
  FlatCountReport r;
  r.pencil_dim = d - l - 1;
  r.tangency_dim = l;
  r.total_dim = r.pencil_dim + r.tangency_dim;
  r.grassmannian_dim = (l + 1) * (d - l) - 1;
  r.grassmannian_exceeds = r.grassmannian_dim > d - 1;
  return r;
}

void write_flats_csv(std::ostream& out, const std::vector<AffineFlat>& flats) {
  if (flats.empty()) return;
  const int d = flats.front().ambient;
  const int l = flats.front().dim;
  out << "flat_id";
  for (int i = 1; i <= d; ++i) out << ",u_" << i;
  for (int i = 1; i <= d; ++i) out << ",y_" << i;
  for (int j = 1; j <= l; ++j) {
    for (int i = 1; i <= d; ++i) out << ",w" << j << "_" << i;
  }
  out << '\n';
  for (const auto& f : flats) {
    out << f.id;
    for (int i = 0; i < d; ++i) out << ',' << format_double(f.tangency(i));
    for (int i = 0; i < d; ++i) out << ',' << format_double(f.base(i));
    for (int j = 0; j < l; ++j) {
      for (int i = 0; i < d; ++i) out << ',' << format_double(f.basis(i, j));
    }
    out << '\n';
  }
}

}  // namespace tansec
