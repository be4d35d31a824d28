#pragma once

#include <boost/math/special_functions/ellint_2.hpp>

#include <cmath>
#include <numbers>

// Closed-form references used by the unit and acceptance tests. None of
// these call into the library.
namespace oracle {

// Chord cut from a disc of radius R by a line at distance 1 from its centre.
inline double chord(double R) { return 2.0 * std::sqrt(R * R - 1.0); }

// Disc cut from a ball of radius R by a plane at distance 1.
inline double section_disc_area(double R) { return std::numbers::pi * (R * R - 1.0); }

// Circular segment of a disc of radius R beyond the line at distance 1.
inline double circular_segment(double R) { return R * R * std::acos(1.0 / R) - std::sqrt(R * R - 1.0); }

// Perimeter of the segment's boundary arc plus chord, halved.
inline double circular_segment_half_perimeter(double R) { return 0.5 * (2.0 * R * std::acos(1.0 / R) + chord(R)); }

// Spherical cap of height h on a ball of radius R.
inline double spherical_cap_volume(double R, double h) { return std::numbers::pi * h * h * (3.0 * R - h) / 3.0; }

// Lateral area of that cap plus the base disc.
inline double spherical_cap_surface(double R, double h) {
  return 2.0 * std::numbers::pi * R * h + std::numbers::pi * (2.0 * R * h - h * h);
}

// Perimeter of an ellipse with semiaxes a >= b.
inline double ellipse_perimeter(double a, double b) {
  const double e = std::sqrt(1.0 - (b * b) / (a * a));
  return 4.0 * a * boost::math::ellint_2(e);
}

// Surface area of a spheroid with semiaxes (a, a, c), c > a.
inline double prolate_spheroid_area(double a, double c) {
  const double e = std::sqrt(1.0 - (a * a) / (c * c));
  return 2.0 * std::numbers::pi * a * a * (1.0 + c / (a * e) * std::asin(e));
}

// Curvature of the ellipse x^2/a^2 + y^2/b^2 = 1 at angle parameter s.
inline double ellipse_curvature(double a, double b, double s) {
  const double dx = -a * std::sin(s), dy = b * std::cos(s);
  return a * b / std::pow(dx * dx + dy * dy, 1.5);
}

}  // namespace oracle
