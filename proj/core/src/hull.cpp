#include "tansec/hull.hpp"

#include "tansec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace tansec {

namespace {

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

std::vector<int> convex_hull_2d(const Mat& points) {
  const int n = static_cast<int>(points.cols());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (points(0, a) != points(0, b)) return points(0, a) < points(0, b);
    return points(1, a) < points(1, b);
  });
  if (n < 3) return idx;
  auto pt = [&](int i) { return Eigen::Vector2d(points(0, i), points(1, i)); };
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(pt(hull[k - 2]), pt(hull[k - 1]), pt(idx[i])) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross2(pt(hull[k - 2]), pt(hull[k - 1]), pt(idx[i])) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  return hull;
}

double polygon_area(const Mat& points, const std::vector<int>& ccw) {
  double twice = 0.0;
  const std::size_t n = ccw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int a = ccw[i];
    const int b = ccw[(i + 1) % n];
    twice += points(0, a) * points(1, b) - points(0, b) * points(1, a);
  }
  return 0.5 * std::abs(twice);
}

double polygon_perimeter(const Mat& points, const std::vector<int>& ccw) {
  double total = 0.0;
  const std::size_t n = ccw.size();
  if (n == 2) return 2.0 * (points.col(ccw[0]) - points.col(ccw[1])).norm();
  for (std::size_t i = 0; i < n; ++i) {
    total += (points.col(ccw[(i + 1) % n]) - points.col(ccw[i])).norm();
  }
  return total;
}

namespace {

struct Face {
  std::array<int, 3> v;
  Eigen::Vector3d normal;
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class QuickHull {
 public:
  explicit QuickHull(const Mat& points) : p_(points.cols()) {
    for (Eigen::Index i = 0; i < points.cols(); ++i) p_[i] = points.col(i).head<3>();
    Eigen::Vector3d lo = p_[0], hi = p_[0];
    for (const auto& q : p_) {
      lo = lo.cwiseMin(q);
      hi = hi.cwiseMax(q);
    }
    const double scale = std::max({(hi - lo).maxCoeff(), lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff()});
    eps_ = 1e-12 * std::max(scale, 1e-300);
  }

  Hull3 run() {
    build_simplex();
    std::deque<int> pending;
    for (std::size_t f = 0; f < faces_.size(); ++f) pending.push_back(static_cast<int>(f));
    std::vector<int> stamp;
    int epoch = 0;
    while (!pending.empty()) {
      const int f = pending.front();
      pending.pop_front();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      const int apex = farthest(faces_[f]);
      ++epoch;
      stamp.resize(faces_.size(), 0);
      // stamp: epoch*2 = visible, epoch*2+1 = hidden
      const int vis = 2 * epoch, hid = 2 * epoch + 1;
      std::vector<int> visible{f};
      std::vector<std::pair<int, int>> horizon;
      stamp[f] = vis;
      for (std::size_t qi = 0; qi < visible.size(); ++qi) {
        const Face& vf = faces_[visible[qi]];
        for (int e = 0; e < 3; ++e) {
          const int a = vf.v[e], b = vf.v[(e + 1) % 3];
          const int nb = edge_face_.at(edge_key(b, a));
          if (stamp[nb] == vis) continue;
          if (stamp[nb] != hid && distance(faces_[nb], p_[apex]) > eps_) {
            stamp[nb] = vis;
            visible.push_back(nb);
          } else {
            stamp[nb] = hid;
            horizon.emplace_back(a, b);
          }
        }
      }
      std::vector<int> orphans;
      for (int vfid : visible) {
        Face& vf = faces_[vfid];
        vf.alive = false;
        for (int e = 0; e < 3; ++e) edge_face_.erase(edge_key(vf.v[e], vf.v[(e + 1) % 3]));
        for (int q : vf.outside) {
          if (q != apex) orphans.push_back(q);
        }
        vf.outside.clear();
        vf.outside.shrink_to_fit();
      }
      const int first_new = static_cast<int>(faces_.size());
      for (const auto& [a, b] : horizon) add_face(a, b, apex);
      const int last_new = static_cast<int>(faces_.size());
      stamp.resize(faces_.size(), 0);
      for (int q : orphans) {
        for (int nf = first_new; nf < last_new; ++nf) {
          if (distance(faces_[nf], p_[q]) > eps_) {
            faces_[nf].outside.push_back(q);
            break;
          }
        }
      }
      for (int nf = first_new; nf < last_new; ++nf) {
        if (!faces_[nf].outside.empty()) pending.push_back(nf);
      }
    }
    Hull3 out;
    for (const auto& f : faces_) {
      if (f.alive) out.faces.push_back(f.v);
    }
    return out;
  }

 private:
  double distance(const Face& f, const Eigen::Vector3d& q) const { return f.normal.dot(q) - f.offset; }

  int farthest(const Face& f) const {
    int best = f.outside.front();
    double bd = -1.0;
    for (int q : f.outside) {
      const double d = distance(f, p_[q]);
      if (d > bd) {
        bd = d;
        best = q;
      }
    }
    return best;
  }

  void add_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = (p_[b] - p_[a]).cross(p_[c] - p_[a]);
    const double len = f.normal.norm();
    if (len > 0) f.normal /= len;
    f.offset = f.normal.dot(p_[a]);
    const int id = static_cast<int>(faces_.size());
    faces_.push_back(std::move(f));
    edge_face_[edge_key(a, b)] = id;
    edge_face_[edge_key(b, c)] = id;
    edge_face_[edge_key(c, a)] = id;
  }

  void build_simplex() {
    const int n = static_cast<int>(p_.size());
    if (n < 4) throw Error("convex_hull_3d needs at least 4 points");
    std::array<int, 6> ext{};
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (p_[i][axis] < p_[lo][axis]) lo = i;
        if (p_[i][axis] > p_[hi][axis]) hi = i;
      }
      ext[2 * axis] = lo;
      ext[2 * axis + 1] = hi;
    }
    int i0 = ext[0], i1 = ext[1];
    double best = -1.0;
    for (int a : ext) {
      for (int b : ext) {
        const double d = (p_[a] - p_[b]).squaredNorm();
        if (d > best) {
          best = d;
          i0 = a;
          i1 = b;
        }
      }
    }
    const Eigen::Vector3d dir = (p_[i1] - p_[i0]).normalized();
    int i2 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d r = p_[i] - p_[i0];
      const double d = (r - r.dot(dir) * dir).norm();
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (i2 < 0) throw Error("convex_hull_3d: points are collinear");
    const Eigen::Vector3d nrm = (p_[i1] - p_[i0]).cross(p_[i2] - p_[i0]).normalized();
    int i3 = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(nrm.dot(p_[i] - p_[i0]));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (i3 < 0) throw Error("convex_hull_3d: points are coplanar");
    const std::array<int, 4> s{i0, i1, i2, i3};
    const Eigen::Vector3d centroid = 0.25 * (p_[i0] + p_[i1] + p_[i2] + p_[i3]);
    const std::array<std::array<int, 3>, 4> tri{{{s[0], s[1], s[2]}, {s[0], s[3], s[1]},
                                                  {s[1], s[3], s[2]}, {s[0], s[2], s[3]}}};
    for (auto t : tri) {
      const Eigen::Vector3d nn = (p_[t[1]] - p_[t[0]]).cross(p_[t[2]] - p_[t[0]]);
      if (nn.dot(centroid - p_[t[0]]) > 0) std::swap(t[1], t[2]);
      add_face(t[0], t[1], t[2]);
    }
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (auto& f : faces_) {
        if (distance(f, p_[i]) > eps_) {
          f.outside.push_back(i);
          break;
        }
      }
    }
  }

  std::vector<Eigen::Vector3d> p_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edge_face_;
  double eps_ = 0.0;
};

}  // namespace

Hull3 convex_hull_3d(const Mat& points) {
  if (points.rows() != 3) throw DimensionMismatch("convex_hull_3d expects 3 x n points");
  return QuickHull(points).run();
}

double hull_volume(const Mat& points, const Hull3& hull) {
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  for (Eigen::Index i = 0; i < points.cols(); ++i) origin += points.col(i).head<3>();
  origin /= static_cast<double>(points.cols());
  double six = 0.0;
  for (const auto& f : hull.faces) {
    const Eigen::Vector3d a = points.col(f[0]).head<3>() - origin;
    const Eigen::Vector3d b = points.col(f[1]).head<3>() - origin;
    const Eigen::Vector3d c = points.col(f[2]).head<3>() - origin;
    six += a.dot(b.cross(c));
  }
  return six / 6.0;
}

double hull_area(const Mat& points, const Hull3& hull) {
  double total = 0.0;
  for (const auto& f : hull.faces) {
    const Eigen::Vector3d a = points.col(f[0]).head<3>();
    const Eigen::Vector3d b = points.col(f[1]).head<3>();
    const Eigen::Vector3d c = points.col(f[2]).head<3>();
    total += 0.5 * (b - a).cross(c - a).norm();
  }
  return total;
}

}  // namespace tansec
