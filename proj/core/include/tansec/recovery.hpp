#pragma once

#include "tansec/asymptotic_estimator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tansec {

enum class RecoveryMode { Sections, CapVolume, CapIntrinsic };

std::string_view to_string(RecoveryMode mode);
SweepMode sweep_mode(RecoveryMode mode);

struct RecoveryOptions {
  RecoveryMode mode = RecoveryMode::Sections;
  FunctionalDescriptor functional;
  EpsilonGrid grid = EpsilonGrid::geometric();
  SweepOptions sweep;
  double zero_floor = 1e-6;
  double max_residual = 0.05;
  double near_zero = 1e-3;             // truth below this is compared absolutely
  double max_unreliable_fraction = 0.05;
  int jobs = 1;
};

struct FieldSample {
  int flat_id = 0;
  Vec direction;
  Vec point;
  double obliquity = 1.0;  // <u, nu>
  double reference = 0.0;
  LimitEstimate limit;
  double c_hat = 0.0;
  double c_hat_error = 0.0;
  double radial_derivative = 0.0;
  bool has_truth = false;
  double truth_c = 0.0;
  double truth_derivative = 0.0;
  double error = 0.0;  // relative, or absolute near zeros of the truth
  bool reliable = true;
  std::string failure;
  MeasurementSeries series;
};

struct RecoveryReport {
  RecoveryMode mode = RecoveryMode::Sections;
  FunctionalDescriptor functional;
  int ambient_dim = 0;
  int flat_dim = 0;
  std::vector<FieldSample> samples;
  int unreliable = 0;
  double rms_error = 0.0;
  double max_error = 0.0;
  bool reliability_ok = true;
};

/// Sweeps, fits and inverts every flat (in parallel over `jobs` workers),
/// then compares with the family's own first-order rate.
RecoveryReport recover_field(const PerturbationFamily& family, const std::vector<AffineFlat>& flats,
                             const RecoveryOptions& opt);

/// Inversion of externally supplied limits, one per flat.
RecoveryReport field_from_limits(const std::vector<AffineFlat>& flats, const std::vector<LimitEstimate>& limits,
                                 const RecoveryOptions& opt);

/// Fills the comparison fields of a report against a known family.
void attach_truth(RecoveryReport& report, const PerturbationFamily& family, const RecoveryOptions& opt);

struct SymmetryCertificate {
  Mat transform;
  double body_residual = 0.0;
  std::vector<int> pair_index;    // partner of each sample under T, -1 if unmatched
  std::vector<double> defects;    // |c(Tu) - c(u)|
  std::vector<double> tolerances;
  double max_defect = 0.0;
  int unmatched = 0;
  bool pass = false;
  bool even = false;
};

/// Pairs u with the nearest sample to Tu (within `match_angle`) and tests
/// c(Tu) = c(u) up to base_tol + 3 * propagated stderr. Throws
/// NotASymmetryOfK when |rho(Tu) - rho(u)| exceeds 1e-8 on the samples.
SymmetryCertificate symmetry_check(const RecoveryReport& report, const RadialBody& body, const Mat& transform,
                                   double base_tol = 1e-3, double match_angle = 1e-6);

struct SantaloResult {
  bool applicable = false;
  bool holds = false;
  double limit_spread = 0.0;
  double field_spread = 0.0;
};

/// Constant limits imply a constant field (planar section reports with k = 1).
SantaloResult santalo_first_order(const RecoveryReport& report, double rel_tol = 1e-3);

}  // namespace tansec
