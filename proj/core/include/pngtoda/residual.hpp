#pragma once

#include <cmath>
#include <vector>

namespace png {

// Finite-difference residual at step and step/2. For a second-order scheme
// applied to an exact identity the ratio tends to 4.
struct ResidualReport {
  double residual = 0.0;       // at step
  double residual_half = 0.0;  // at step / 2
  double step = 0.0;
  std::vector<double> location;

  double richardson_ratio() const { return residual / residual_half; }
  double observed_order() const { return std::log2(std::fabs(richardson_ratio())); }
};

}  // namespace png
