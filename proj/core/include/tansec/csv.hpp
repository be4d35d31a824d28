#pragma once

#include "tansec/recovery.hpp"

#include <ostream>
#include <string>

namespace tansec {

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// flat_id, u_1..u_d, mode, k, epsilon, value, stderr
void write_measurement_csv(std::ostream& out, const RecoveryReport& report);
/// flat_id, L, stderr, residual, c_hat
void write_limit_csv(std::ostream& out, const RecoveryReport& report);
/// flat_id, epsilon, scaled (g / eps^alpha), alpha
void write_plot_csv(std::ostream& out, const RecoveryReport& report);
/// flat_id, u_1..u_d, c_hat, c_hat_stderr, radial_derivative, truth, error, reliable
void write_field_csv(std::ostream& out, const RecoveryReport& report);

}  // namespace tansec
