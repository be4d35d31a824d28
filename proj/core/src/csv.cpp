#include "tansec/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace tansec {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

void header_u(std::ostream& out, int d) {
  for (int i = 1; i <= d; ++i) out << ",u_" << i;
}

void row_u(std::ostream& out, const Vec& u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) out << ',' << format_double(u(i));
}

}  // namespace

void write_measurement_csv(std::ostream& out, const RecoveryReport& report) {
  out << "flat_id";
  header_u(out, report.ambient_dim);
  out << ",mode,k,epsilon,value,stderr\n";
  for (const auto& s : report.samples) {
    for (int i = 0; i < s.series.size(); ++i) {
      out << s.flat_id;
      row_u(out, s.direction);
      out << ',' << to_string(s.series.mode) << ',' << s.series.functional.degree << ','
          << format_double(s.series.eps[i]) << ',' << format_double(s.series.values[i]) << ','
          << format_double(s.series.errors[i]) << '\n';
    }
  }
}

void write_limit_csv(std::ostream& out, const RecoveryReport& report) {
  out << "flat_id,L,stderr,residual,c_hat\n";
  for (const auto& s : report.samples) {
    out << s.flat_id << ',' << format_double(s.limit.limit) << ',' << format_double(s.limit.std_error) << ','
        << format_double(s.limit.residual) << ',' << format_double(s.c_hat) << '\n';
  }
}

void write_plot_csv(std::ostream& out, const RecoveryReport& report) {
  out << "flat_id,epsilon,scaled,alpha\n";
  for (const auto& s : report.samples) {
    for (int i = 0; i < s.series.size(); ++i) {
      const double scaled = s.series.values[i] / std::pow(s.series.eps[i], s.series.alpha);
      out << s.flat_id << ',' << format_double(s.series.eps[i]) << ',' << format_double(scaled) << ','
          << format_double(s.series.alpha) << '\n';
    }
  }
}

void write_field_csv(std::ostream& out, const RecoveryReport& report) {
  out << "flat_id";
  header_u(out, report.ambient_dim);
  out << ",c_hat,c_hat_stderr,radial_derivative,truth,error,reliable\n";
  for (const auto& s : report.samples) {
    out << s.flat_id;
    row_u(out, s.direction);
    out << ',' << format_double(s.c_hat) << ',' << format_double(s.c_hat_error) << ','
        << format_double(s.radial_derivative) << ',' << (s.has_truth ? format_double(s.truth_derivative) : "")
        << ',' << format_double(s.error) << ',' << (s.reliable ? 1 : 0) << '\n';
  }
}

}  // namespace tansec
