#include "pngtoda/walk_ops.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pngtoda/errors.hpp"

namespace png {

IntegerKernel::IntegerKernel(Window w) : w_(w), m_(Eigen::MatrixXd::Zero(w.size(), w.size())) {
  if (w.size() <= 0) throw DomainError("empty window");
}

IntegerKernel::IntegerKernel(Window w, Eigen::MatrixXd m) : w_(w), m_(std::move(m)) {
  if (w.size() <= 0) throw DomainError("empty window");
  if (m_.rows() != w.size() || m_.cols() != w.size())
    throw DomainError("matrix shape does not match window");
}

IntegerKernel IntegerKernel::identity(Window w) {
  return IntegerKernel(w, Eigen::MatrixXd::Identity(w.size(), w.size()));
}

double IntegerKernel::operator()(long u, long v) const {
  if (!w_.contains(u) || !w_.contains(v)) return 0.0;
  return m_(u - w_.lo, v - w_.lo);
}

IntegerKernel IntegerKernel::compose(const IntegerKernel& other) const {
  if (!(w_ == other.w_)) throw DomainError("composition of kernels on different windows");
  return IntegerKernel(w_, m_ * other.m_);
}

IntegerKernel nabla_kernel(Window w) {
  IntegerKernel k(w);
  for (long u = w.lo; u < w.hi; ++u) {
    k.at(u, u + 1) = 0.5;
    k.at(u + 1, u) = -0.5;
  }
  return k;
}

IntegerKernel laplace_kernel(Window w) {
  IntegerKernel k(w);
  for (long u = w.lo; u <= w.hi; ++u) {
    k.at(u, u) = -2.0;
    if (u < w.hi) k.at(u, u + 1) = k.at(u + 1, u) = 1.0;
  }
  return k;
}

double bessel_i(long n, double x) {
  n = std::labs(n);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  double v = std::cyl_bessel_i(static_cast<double>(n), std::fabs(x));
  return (x < 0 && (n & 1)) ? -v : v;
}

double bessel_j(long n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n & 1) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  if (x < 0 && (n & 1)) sign = -sign;
  return sign * std::cyl_bessel_j(static_cast<double>(n), std::fabs(x));
}

double heat_entry(double x, long d) {
  if (x == 0.0) return d == 0 ? 1.0 : 0.0;
  return std::exp(-2.0 * x) * bessel_i(d, 2.0 * x);
}

namespace {

template <class Entry>
Eigen::MatrixXd toeplitz(Window rows, Window cols, Entry entry) {
  const long dmin = cols.lo - rows.hi;
  const long dmax = cols.hi - rows.lo;
  std::vector<double> diag(static_cast<std::size_t>(dmax - dmin + 1));
  for (long d = dmin; d <= dmax; ++d) diag[static_cast<std::size_t>(d - dmin)] = entry(d);
  Eigen::MatrixXd m(rows.size(), cols.size());
  for (long i = 0; i < rows.size(); ++i)
    for (long j = 0; j < cols.size(); ++j)
      m(i, j) = diag[static_cast<std::size_t>((cols.lo + j) - (rows.lo + i) - dmin)];
  return m;
}

}  // namespace

Eigen::MatrixXd heat_block(double x, Window rows, Window cols) {
  // Entries depend on |d| only.
  std::vector<double> cache;
  auto entry = [&](long d) {
    std::size_t k = static_cast<std::size_t>(std::labs(d));
    while (cache.size() <= k) cache.push_back(heat_entry(x, static_cast<long>(cache.size())));
    return cache[k];
  };
  return toeplitz(rows, cols, entry);
}

IntegerKernel heat_kernel(double x, Window w) { return IntegerKernel(w, heat_block(x, w, w)); }

double drift_entry_series(double t, double x, long d) {
  // Coefficient of z^d in e^{A z + B/z}, times e^{-2x}.
  const double a = t + x;
  const double b = x - t;
  const double p = d >= 0 ? a : b;  // carries the offset
  const double q = d >= 0 ? b : a;
  const long n = std::labs(d);
  if (p == 0.0 && n > 0) return 0.0;
  double term = n == 0 ? 1.0 : std::exp(n * std::log(std::fabs(p)) - std::lgamma(n + 1.0));
  if (p < 0 && (n & 1)) term = -term;
  double sum = term;
  const double pq = p * q;
  for (long k = 0; k < 100000; ++k) {
    term *= pq / ((k + 1.0) * (k + n + 1.0));
    sum += term;
    if (k > std::sqrt(std::fabs(pq)) && std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    if (term == 0.0) break;
  }
  return std::exp(-2.0 * x) * sum;
}

double drift_entry(double t, double x, long d) {
  const double a = t + x;
  const double b = x - t;
  if (a == 0.0 || b == 0.0) return drift_entry_series(t, x, d);
  const double pre = std::exp(-2.0 * x);
  const double parity = (d & 1) ? -1.0 : 1.0;
  if (a * b < 0.0) {
    // e^{A z - C/z} with A C > 0: rescale z to reach the J generating function.
    const double c = -b;
    const double arg = 2.0 * std::sqrt(a * c);
    const double scale = std::exp(0.5 * d * std::log(std::fabs(a / c)));
    const double sgn = a > 0 ? 1.0 : parity;
    return pre * sgn * scale * bessel_j(d, arg);
  }
  const double arg = 2.0 * std::sqrt(a * b);
  const double scale = std::exp(0.5 * d * std::log(std::fabs(a / b)));
  const double sgn = a > 0 ? 1.0 : parity;
  return pre * sgn * scale * bessel_i(d, arg);
}

IntegerKernel drift_kernel(double t, double x, Window w, double tail_tol) {
  Eigen::MatrixXd m = toeplitz(w, w, [&](long d) { return drift_entry(t, x, d); });
  const long n = w.size();
  if (n > 1 && (std::fabs(m(0, n - 1)) > tail_tol || std::fabs(m(n - 1, 0)) > tail_tol))
    throw WindowError("drift kernel window too small: corner entry exceeds tail tolerance");
  return IntegerKernel(w, std::move(m));
}

double triangular_entry(double t, int sign, long u, long v) {
  const long k = sign > 0 ? u - v : v - u;
  if (k < 0) return 0.0;
  if (t == 0.0) return k == 0 ? 1.0 : 0.0;
  double mag = std::exp(2.0 * t + k * std::log(std::fabs(2.0 * t)) - std::lgamma(k + 1.0));
  return (t > 0 && (k & 1)) ? -mag : mag;
}

Eigen::MatrixXd triangular_block(double t, int sign, Window rows, Window cols) {
  Eigen::MatrixXd m(rows.size(), cols.size());
  for (long i = 0; i < rows.size(); ++i)
    for (long j = 0; j < cols.size(); ++j)
      m(i, j) = triangular_entry(t, sign, rows.lo + i, cols.lo + j);
  return m;
}

IntegerKernel triangular_conjugator(double t, int sign, Window w) {
  return IntegerKernel(w, triangular_block(t, sign, w, w));
}

QuadratureResult quadrature_oracle(double t, double x, long u, long v, double tol, double radius) {
  using cd = std::complex<double>;
  const long d = v - u;
  if (radius < 0 || !std::isfinite(radius)) throw DomainError("contour radius must be positive");
  const double rho = radius > 0 ? radius : (u > v ? 0.5 : 2.0);
  auto rule = [&](long n) {
    cd sum = 0.0;
    for (long k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      const cd z = std::polar(rho, th);
      sum += std::exp(t * (z - 1.0 / z) + x * (z + 1.0 / z) - static_cast<double>(d) * std::log(z));
    }
    return std::exp(-2.0 * x) * sum.real() / static_cast<double>(n);
  };
  long n = 16;
  double prev = rule(n);
  while (n < (1L << 20)) {
    n *= 2;
    double cur = rule(n);
    if (std::fabs(cur - prev) < tol) return {cur, n};
    prev = cur;
  }
  throw ConvergenceError("quadrature oracle did not converge");
}

}  // namespace png
