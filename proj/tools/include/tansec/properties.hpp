#pragma once

#include "tansec/ellipsoid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tansec {

struct PropertyResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;      // worst observed discrepancy
  double tolerance = 0.0;
  std::string detail;
};

std::vector<PropertyResult> sandwich_properties();
std::vector<PropertyResult> paraboloid_ratio_properties();
std::vector<PropertyResult> homogeneity_properties(std::uint64_t seed = 7);
std::vector<PropertyResult> monotonicity_properties(std::uint64_t seed = 11);
std::vector<PropertyResult> steiner_properties();
std::vector<PropertyResult> embedding_properties(std::uint64_t seed = 13);
std::vector<PropertyResult> kubota_properties(std::uint64_t seed = 17);

/// All of the above, in that order.
std::vector<PropertyResult> all_properties(std::uint64_t seed = 0);

/// V(K + r B) for an ellipsoid K by radial quadrature of the parallel body.
double parallel_body_volume(const EllipsoidSpec& k, double r);

}  // namespace tansec
