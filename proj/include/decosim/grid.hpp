#pragma once

#include <stdexcept>

namespace decosim {

/// Uniform 1-D grid over [min, max] with n points (endpoints included).
struct UniformGrid {
  double min = 0.0;
  double max = 1.0;
  int n = 2;

  double spacing() const { return (max - min) / (n - 1); }
  double point(int i) const { return min + i * spacing(); }

  void validate() const {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
    if (!(min < max)) throw std::invalid_argument("grid requires min < max");
  }
};

}  // namespace decosim
