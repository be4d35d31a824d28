#pragma once

#include "tansec/convex_measures.hpp"

#include <cstdint>
#include <vector>

namespace tansec {

/// Strictly decreasing eps_i = eps0 * ratio^i.
struct EpsilonGrid {
  std::vector<double> values;

  static EpsilonGrid geometric(double eps0 = 0.015625, double ratio = 0.5, int count = 9);
  int size() const { return static_cast<int>(values.size()); }
  void validate() const;
};

enum class SweepMode { Section, Cap };

std::string_view to_string(SweepMode mode);

/// alpha such that F(S^eps) ~ L eps^alpha.
double scaling_exponent(SweepMode mode, const FunctionalDescriptor& f, int ambient_dim);

struct MeasurementSeries {
  int flat_id = 0;
  Vec direction;
  SweepMode mode = SweepMode::Section;
  FunctionalDescriptor functional;
  double alpha = 0.0;
  std::vector<double> eps;
  std::vector<double> values;
  std::vector<double> errors;
  int dropped_head = 0;  // grid points removed because the patch was exceeded

  int size() const { return static_cast<int>(eps.size()); }
};

struct LimitEstimate {
  double limit = 0.0;
  double std_error = 0.0;
  double residual = 0.0;  // weighted rms misfit relative to the scale of y
  double correction = 0.0;   // coefficient of sqrt(eps)
  double correction2 = 0.0;  // coefficient of eps (extended model only)
  bool extended_model = false;
  bool zero = false;
  double drift = 0.0;  // (max y - min y) / max |y| over the grid
};

struct SweepOptions {
  SamplingOptions sampling;
  MeasureOptions measure;
  std::uint64_t seed = 0;
  int min_points = 5;
};

/// g_i = F(S^{eps_i}) (section) or F(C^{eps_i}) (cap) for one flat.
MeasurementSeries sweep(const PerturbationFamily& family, const AffineFlat& flat, const FunctionalDescriptor& f,
                        const EpsilonGrid& grid, SweepMode mode, const SweepOptions& opt = {});

/// Weighted least squares of y = g / eps^alpha on L + a sqrt(eps), refitted
/// with an extra eps term when the relative residual exceeds `max_residual`.
/// Throws PoorFit when both fail.
LimitEstimate extract_limit(const MeasurementSeries& series, double zero_floor = 1e-6, double max_residual = 0.05);

/// c = (L / F(E))^{2/k}.
double invert_section_limit(const LimitEstimate& est, double f_of_e, int k);
/// c = (L sqrt(det Q) / (kappa_{d-1} 2/(d+1)))^{2/(d+1)}.
double invert_cap_volume_limit(const LimitEstimate& est, const Mat& form, int d);
/// c = (L / V_k(E))^{2/k}.
double invert_cap_intrinsic_limit(const LimitEstimate& est, double vk_of_e, int k);
/// c = (L / reference)^{1/alpha} for any registered functional.
double invert_limit(const LimitEstimate& est, double reference, double alpha);

/// Reference value F(E) (or G(E') for volume-type cap functionals) at the
/// tangency frame of `flat`.
double reference_value(SweepMode mode, const FunctionalDescriptor& f, const AffineFlat& flat);

}  // namespace tansec
