#pragma once

#include <vector>

#include "pngtoda/fredholm.hpp"
#include "pngtoda/residual.hpp"

namespace png {

// Finite-difference checks use one fixed truncation so that every stencil
// point sees the same discretisation.
struct StencilOptions {
  long block_size = 60;
  long buffer = 40;
};

// Light-cone moves: eta by d is (t, x_i) -> (t + d/2, x_i + d/2), zeta by d is
// (t, x_i) -> (t + d/2, x_i - d/2). Then d_eta d_zeta = (d_t^2 - d_x^2)/4 for
// one point.
struct Stencil {
  double t;
  std::vector<double> xs;
  Stencil moved(double d_eta, double d_zeta) const;
};

// F and Q at fixed truncation; F is 0 below the admissible floor.
FredholmResult fixed_cdf(const HeightFunction& h, const Stencil& p, const std::vector<long>& rs,
                         const StencilOptions& opts = {});

// (d_t^2 - d_x^2)/4 log F_r - (F_{r+1} F_{r-1} / F_r^2 - 1) by central differences.
ResidualReport toda_scalar_residual(const HeightFunction& h, double t, double x, long r,
                                    double step, const StencilOptions& opts = {});

// Flat data, g_r = log F_r - log F_{r-1}: d^2/d(2t)^2 g_r - (e^{g_{r+1}-g_r} - e^{g_r-g_{r-1}}),
// written through F so that F_{-1} = 0 is allowed (r >= 1).
ResidualReport toda_1d_residual(double t, long r, double step, const StencilOptions& opts = {});

// max-entry norm of d_zeta V_r + U_{r+1} - U_r with U_r = Q_r Q_{r-1}^{-1},
// V_r = -d_eta Q_r Q_r^{-1}.
ResidualReport nonabelian_residual(const HeightFunction& h, double t, const std::vector<double>& xs,
                                   const std::vector<long>& rs, double step,
                                   const StencilOptions& opts = {});

// Central difference of K_r(u, v) along eta (or zeta) against
// K_{r-1}(u+1, v) - K_r(u+1, v) (or K_{r-1}(u, v+1) - K_r(u, v+1)); max over all
// blocks and 1 <= u, v <= sub_window.
enum class LightCone { Eta, Zeta };
ResidualReport kernel_evolution_residual(const HeightFunction& h, double t,
                                         const std::vector<double>& xs, const std::vector<long>& rs,
                                         LightCone direction, double step, long sub_window = 10,
                                         const StencilOptions& opts = {});

// |F(r+1)/F(r) - det Q_r|.
double ratio_identity_check(const HeightFunction& h, double t, const std::vector<double>& xs,
                            const std::vector<long>& rs, const StencilOptions& opts = {});

// Pinned-walk probability matrices at t = 0 (strictly upper triangular):
//   ge_lt(i,j): start r_i at x_i, end r_j at x_j, stay >= h on [x_i, x_j],
//               N(x_l) < r_l at interior points;
//   ge_le, gt_le: the same with the other inequality pairs;
//   touch_plus(i,j): start r_i + 1, stay >= h, touch h, N(x_l) <= r_l inside;
//   touch_then_hit_plus(i,j): as touch_plus, and some N(x_l) = r_l occurs after
//   the first touch of h.
struct PinnedPathMatrices {
  Eigen::MatrixXd ge_lt;
  Eigen::MatrixXd ge_le;
  Eigen::MatrixXd gt_le;
  Eigen::MatrixXd touch_plus;
  Eigen::MatrixXd touch_then_hit_plus;

  Eigen::MatrixXd q() const;
  Eigen::MatrixXd q_inverse() const;
  Eigen::MatrixXd d_eta_q() const;
  Eigen::MatrixXd u() const;
  Eigen::MatrixXd v() const;  // -d_eta_q() * q_inverse()
};

PinnedPathMatrices pinned_matrices_t0(const HeightFunction& h, const std::vector<double>& xs,
                                      const std::vector<long>& rs, long buffer = 40);

struct InitialDataReport {
  double q_deviation = 0.0;        // pipeline Q at t = 0 vs I - ge_lt
  double inverse_deviation = 0.0;  // (I - ge_lt)(I + ge_le) vs I
  double d_eta_deviation = 0.0;    // one-sided difference of Q in eta vs the touch formula
  double v_deviation = 0.0;        // the same for V
  double step = 0.0;

  double max_deviation() const;
};

InitialDataReport initial_data_check(const HeightFunction& h, const std::vector<double>& xs,
                                     const std::vector<long>& rs, double step = 1e-3,
                                     const StencilOptions& opts = {});

}  // namespace png
