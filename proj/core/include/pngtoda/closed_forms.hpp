#pragma once

#include <vector>

#include "pngtoda/residual.hpp"

namespace png {

// e^{-s^2} det(I_{i-j}(2s))_{i,j=1..r}; equals the narrow-wedge distribution
// function at level r with s = sqrt(t^2 - x^2).
double narrow_wedge_toeplitz(double s, long r);

// e^{-2t^2} det(I_{i-j}(4t) - I_{i+j+2}(4t))_{i,j=0..r-1}; the flat one-point
// distribution function at time t and level r.
double flat_toeplitz_hankel(double t, long r);

// Discrete Bessel kernel s (J_{u-1} J_v - J_u J_{v-1}) / (u - v), J = J(2s);
// the diagonal uses derivatives in the order (u >= 1) or the series.
double discrete_bessel_kernel(double s, long u, long v);
// sum_{k>=0} J_{u+k}(2s) J_{v+k}(2s).
double discrete_bessel_series(double s, long u, long v);
// det(I - B_s) on l^2({r+1, ..., r+size}).
double discrete_bessel_fredholm(double s, long r, long size = 60);

// Verblunsky coefficients alpha_n = -Phi_{n+1}(0) of the weight e^{s(z+1/z)}
// on the unit circle, and the norms N_n = ||Phi_n||^2 (N_0 = I_0(2s)).
struct VerblunskySequence {
  double s = 0.0;
  std::vector<double> alpha;  // alpha_0 .. alpha_{count-1}
  std::vector<double> norms;  // N_0 .. N_count
};

// Levinson recursion on the moments I_k(2s). Throws ConvergenceError when
// 1 - alpha^2 falls below 1e-15.
VerblunskySequence verblunsky(double s, long count);

// -s (1 - a_r^2)(a_{r+1} + a_{r-1}) - (r + 1) a_r, r >= 1.
double dpii_residual(double s, long r);
// Central difference of d/ds a_r minus (1 - a_r^2)(a_{r+1} - a_{r-1}).
ResidualReport ablowitz_ladik_residual(double s, long r, double step);
// |F_r/F_{r+1} - (1 + b_{2r+2}) / N_{2r+2}| for the flat data at time t,
// b_k = -Phi_k(0) of the weight with s = 2t.
double flat_opuc_ratio(double t, long r);

}  // namespace png
