#pragma once

#include "photodet/models.hpp"
#include "photodet/spectrum.hpp"

#include <cmath>
#include <memory>

namespace testing_support {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline photodet::EigenSystemPtr solve(const photodet::ModelSystem& m) {
  return std::make_shared<const photodet::EigenSystem>(photodet::diagonalize(m));
}

}  // namespace testing_support
