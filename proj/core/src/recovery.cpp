#include "tansec/recovery.hpp"

#include "tansec/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace tansec {

std::string_view to_string(RecoveryMode mode) {
  switch (mode) {
    case RecoveryMode::Sections: return "sections";
    case RecoveryMode::CapVolume: return "cap_volume";
    case RecoveryMode::CapIntrinsic: return "cap_intrinsic";
  }
  return "unknown";
}

SweepMode sweep_mode(RecoveryMode mode) {
  return mode == RecoveryMode::Sections ? SweepMode::Section : SweepMode::Cap;
}

namespace {

void check_mode(const RecoveryOptions& opt, int d, int l) {
  const FunctionalDescriptor& f = opt.functional;
  switch (opt.mode) {
    case RecoveryMode::Sections: f.validate(l); break;
    case RecoveryMode::CapVolume:
      if (l != d - 1) throw DimensionMismatch("cap recovery needs tangent hyperplanes");
      f.validate(d);
      if (!f.volume_type(d)) throw UnsupportedCombination("cap_volume mode needs a volume-type functional");
      break;
    case RecoveryMode::CapIntrinsic:
      if (l != d - 1) throw DimensionMismatch("cap recovery needs tangent hyperplanes");
      f.validate(d);
      if (f.volume_type(d)) throw UnsupportedCombination("cap_intrinsic mode needs a functional of degree below d");
      break;
  }
}

template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  const int workers = std::clamp(jobs, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void invert_into(FieldSample& s, const AffineFlat& flat, const RecoveryOptions& opt, double alpha) {
  s.reference = reference_value(sweep_mode(opt.mode), opt.functional, flat);
  s.c_hat = invert_limit(s.limit, s.reference, alpha);
  s.c_hat_error = s.limit.limit > 0 ? s.c_hat / alpha * s.limit.std_error / s.limit.limit : 0.0;
  s.radial_derivative = radial_derivative_from_c(flat.frame, s.c_hat);
}

FieldSample base_sample(const AffineFlat& flat) {
  FieldSample s;
  s.flat_id = flat.id;
  s.direction = flat.tangency;
  s.point = flat.base;
  s.obliquity = flat.frame.obliquity();
  return s;
}

void summarize(RecoveryReport& r, const RecoveryOptions& opt) {
  r.unreliable = 0;
  double sq = 0.0;
  int counted = 0;
  r.max_error = 0.0;
  for (const auto& s : r.samples) {
    if (!s.reliable) {
      ++r.unreliable;
      continue;
    }
    if (!s.has_truth) continue;
    sq += s.error * s.error;
    r.max_error = std::max(r.max_error, s.error);
    ++counted;
  }
  r.rms_error = counted > 0 ? std::sqrt(sq / counted) : 0.0;
  r.reliability_ok = r.samples.empty() ||
                     r.unreliable <= opt.max_unreliable_fraction * static_cast<double>(r.samples.size());
}

}  // namespace

RecoveryReport recover_field(const PerturbationFamily& family, const std::vector<AffineFlat>& flats,
                             const RecoveryOptions& opt) {
  RecoveryReport r;
  r.mode = opt.mode;
  r.functional = opt.functional;
  r.ambient_dim = family.dimension();
  if (flats.empty()) return r;
  r.flat_dim = flats.front().dim;
  check_mode(opt, r.ambient_dim, r.flat_dim);
  const SweepMode mode = sweep_mode(opt.mode);
  const double alpha = scaling_exponent(mode, opt.functional, r.ambient_dim);

  r.samples.resize(flats.size());
  parallel_for(static_cast<int>(flats.size()), opt.jobs, [&](int i) {
    const AffineFlat& flat = flats[i];
    FieldSample s = base_sample(flat);
    try {
      s.series = sweep(family, flat, opt.functional, opt.grid, mode, opt.sweep);
      s.limit = extract_limit(s.series, opt.zero_floor, opt.max_residual);
      invert_into(s, flat, opt, alpha);
    } catch (const PoorFit& e) {
      s.reliable = false;
      s.failure = e.what();
    }
    r.samples[i] = std::move(s);
  });
  attach_truth(r, family, opt);
  return r;
}

RecoveryReport field_from_limits(const std::vector<AffineFlat>& flats, const std::vector<LimitEstimate>& limits,
                                 const RecoveryOptions& opt) {
  if (flats.size() != limits.size()) throw DimensionMismatch("field_from_limits: one limit per flat is required");
  RecoveryReport r;
  r.mode = opt.mode;
  r.functional = opt.functional;
  if (flats.empty()) return r;
  r.ambient_dim = flats.front().ambient;
  r.flat_dim = flats.front().dim;
  check_mode(opt, r.ambient_dim, r.flat_dim);
  const double alpha = scaling_exponent(sweep_mode(opt.mode), opt.functional, r.ambient_dim);
  for (std::size_t i = 0; i < flats.size(); ++i) {
    FieldSample s = base_sample(flats[i]);
    s.limit = limits[i];
    invert_into(s, flats[i], opt, alpha);
    r.samples.push_back(std::move(s));
  }
  summarize(r, opt);
  return r;
}

void attach_truth(RecoveryReport& report, const PerturbationFamily& family, const RecoveryOptions& opt) {
  for (auto& s : report.samples) {
    s.has_truth = true;
    s.truth_derivative = family.rate(s.direction);
    s.truth_c = s.truth_derivative * s.obliquity;
    if (!s.reliable) continue;
    const double diff = std::abs(s.radial_derivative - s.truth_derivative);
    s.error = std::abs(s.truth_derivative) > opt.near_zero ? diff / std::abs(s.truth_derivative) : diff;
  }
  summarize(report, opt);
}

SymmetryCertificate symmetry_check(const RecoveryReport& report, const RadialBody& body, const Mat& transform,
                                   double base_tol, double match_angle) {
  const int d = body.dimension();
  if (transform.rows() != d || transform.cols() != d) throw DimensionMismatch("symmetry_check: T has the wrong size");
  if (orthonormality_defect(transform) > 1e-10) throw Error("symmetry_check: T is not orthogonal");
  SymmetryCertificate c;
  c.transform = transform;
  c.even = (transform + Mat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12;
  for (const auto& s : report.samples) {
    c.body_residual = std::max(c.body_residual, std::abs(body.radial(transform * s.direction) - body.radial(s.direction)));
  }
  if (c.body_residual > 1e-8) throw NotASymmetryOfK("symmetry_check: T does not map K onto itself");

  const auto n = report.samples.size();
  c.pair_index.assign(n, -1);
  c.defects.assign(n, 0.0);
  c.tolerances.assign(n, base_tol);
  const double max_chord = 2.0 * std::sin(0.5 * match_angle);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = report.samples[i];
    if (!a.reliable) continue;
    const Vec target = transform * a.direction;
    double best = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (std::size_t j = 0; j < n; ++j) {
      const double dist = (report.samples[j].direction - target).norm();
      if (dist < best) {
        best = dist;
        best_j = static_cast<int>(j);
      }
    }
    if (best_j < 0 || best > max_chord || !report.samples[best_j].reliable) {
      ++c.unmatched;
      continue;
    }
    const auto& b = report.samples[best_j];
    c.pair_index[i] = best_j;
    c.defects[i] = std::abs(b.c_hat - a.c_hat);
    c.tolerances[i] = base_tol + 3.0 * std::hypot(a.c_hat_error, b.c_hat_error);
    c.max_defect = std::max(c.max_defect, c.defects[i]);
    if (c.defects[i] > c.tolerances[i]) ok = false;
  }
  c.pass = ok && c.unmatched == 0;
  return c;
}

SantaloResult santalo_first_order(const RecoveryReport& report, double rel_tol) {
  SantaloResult r;
  if (report.ambient_dim != 2 || report.mode != RecoveryMode::Sections || report.functional.degree != 1) return r;
  double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0, err = 0.0;
  double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0;
  for (const auto& s : report.samples) {
    if (!s.reliable) continue;
    lmin = std::min(lmin, s.limit.limit);
    lmax = std::max(lmax, s.limit.limit);
    err = std::max(err, s.limit.std_error);
    fmin = std::min(fmin, s.radial_derivative);
    fmax = std::max(fmax, s.radial_derivative);
  }
  if (!(lmax >= lmin)) return r;
  r.limit_spread = lmax - lmin;
  r.field_spread = fmax - fmin;
  r.applicable = r.limit_spread <= rel_tol * lmax + 3.0 * err;
  r.holds = !r.applicable || r.field_spread <= 2.0 * rel_tol * std::max(fmax, 1e-300) + 1e-12;
  return r;
}

}  // namespace tansec
