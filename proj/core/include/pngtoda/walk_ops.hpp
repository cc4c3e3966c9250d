#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace png {

// Contiguous integer range [lo, hi] used to truncate operators on l^2(Z).
struct Window {
  long lo = 0;
  long hi = -1;

  long size() const { return hi - lo + 1; }
  bool contains(long u) const { return u >= lo && u <= hi; }
  bool operator==(const Window&) const = default;
};

// Square restriction of an operator on l^2(Z) to a window.
class IntegerKernel {
 public:
  explicit IntegerKernel(Window w);
  IntegerKernel(Window w, Eigen::MatrixXd m);

  static IntegerKernel identity(Window w);

  const Window& window() const { return w_; }
  // Zero outside the window.
  double operator()(long u, long v) const;
  double& at(long u, long v) { return m_(u - w_.lo, v - w_.lo); }

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::MatrixXd& matrix() { return m_; }

  // Truncated product; throws DomainError when windows differ.
  IntegerKernel compose(const IntegerKernel& other) const;

 private:
  Window w_;
  Eigen::MatrixXd m_;
};

// (nabla f)(u) = (f(u+1) - f(u-1)) / 2 and (Delta f)(u) = f(u+1) - 2 f(u) + f(u-1),
// truncated to the window.
IntegerKernel nabla_kernel(Window w);
IntegerKernel laplace_kernel(Window w);

// Integer-order Bessel functions of a real argument.
double bessel_i(long n, double x);
double bessel_j(long n, double x);

// e^{x Delta}(u, u+d) = e^{-2x} I_d(2x).
double heat_entry(double x, long d);
IntegerKernel heat_kernel(double x, Window w);
Eigen::MatrixXd heat_block(double x, Window rows, Window cols);

// e^{2t nabla + x Delta}(u, u+d). Bessel form when available, series otherwise.
double drift_entry(double t, double x, long d);
// Plain double power series of the same entry.
double drift_entry_series(double t, double x, long d);
// Throws WindowError if a corner entry exceeds tail_tol.
IntegerKernel drift_kernel(double t, double x, Window w, double tail_tol = 1e-12);

// sign=+1: e^{2t nabla - t Delta}, lower triangular.
// sign=-1: e^{-2t nabla - t Delta}, upper triangular (the transpose).
double triangular_entry(double t, int sign, long u, long v);
IntegerKernel triangular_conjugator(double t, int sign, Window w);
Eigen::MatrixXd triangular_block(double t, int sign, Window rows, Window cols);

struct QuadratureResult {
  double value;
  long nodes;
};

// Trapezoid rule for the contour integral of e^{2t nabla + x Delta}(u, v) on a
// circle of radius 1/2 (u > v) or 2 (u <= v), doubling nodes until the change
// drops below tol. A positive radius overrides the default circle. Throws
// ConvergenceError past 2^20 nodes.
QuadratureResult quadrature_oracle(double t, double x, long u, long v, double tol = 1e-13,
                                   double radius = 0.0);

}  // namespace png
