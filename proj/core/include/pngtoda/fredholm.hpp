#pragma once

#include <optional>
#include <vector>

#include "pngtoda/kernel.hpp"

namespace png {

struct FredholmOptions {
  long block_size = 60;
  long buffer = 40;
  // Adaptive mode doubles M (and the buffer) until successive determinants
  // differ by less than tolerance. Fixed mode evaluates once at block_size.
  bool adaptive = true;
  double tolerance = 1e-8;
  int max_doublings = 3;
  // Below the admissible floor the distribution function is 0; when set, the
  // truncated determinant is returned instead (diagnostics only).
  bool raw_below_floor = false;
};

struct FredholmResult {
  double value = 0.0;
  // Q = I + [(I - K)^{-1} K] sampled at u = v = 1 of every block.
  std::optional<Eigen::MatrixXd> q;
  long block_size = 0;
  bool converged = true;
  double tail_estimate = 0.0;  // |F(2M) - F(M)| of the last doubling, 0 in fixed mode
  bool below_floor = false;
};

// det(I - K) on the truncated space, with Q from the same LU factorisation.
FredholmResult fredholm_det(const BlockKernel& k);

// P(h(t, x_i) <= r_i for all i). Throws DomainError on bad input; reports
// non-convergence through the result flag.
FredholmResult png_cdf(const HeightFunction& h, double t, const std::vector<double>& xs,
                       const std::vector<long>& rs, const FredholmOptions& opts = {});

// Smallest r with a positive probability at (t, x): sup of h over [x-t, x+t].
Height admissible_floor(const HeightFunction& h, double t, double x);

}  // namespace png
