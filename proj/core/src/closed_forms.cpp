#include "pngtoda/closed_forms.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>

#include "pngtoda/errors.hpp"
#include "pngtoda/walk_ops.hpp"

namespace png {

namespace {

void check_s(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw DomainError("s must be positive");
}

void check_r(long r) {
  if (r < 0) throw DomainError("r must be non-negative");
}

// d/dnu J_nu(x) at integer nu >= 0, from the power series.
double bessel_j_order_derivative(long nu, double x) {
  const double h = 0.5 * x;
  const double lh = std::log(h);
  double sum = 0.0;
  for (long m = 0; m < 500; ++m) {
    const double lg = (2.0 * m + nu) * lh - std::lgamma(m + 1.0) - std::lgamma(m + nu + 1.0);
    const double term = ((m & 1) ? -1.0 : 1.0) * std::exp(lg);
    sum += term * (lh - boost::math::digamma(m + nu + 1.0));
    if (m > h && std::fabs(term) < 1e-18 * (1.0 + std::fabs(sum))) break;
  }
  return sum;
}

}  // namespace

double narrow_wedge_toeplitz(double s, long r) {
  check_r(r);
  if (s < 0) throw DomainError("s must be non-negative");
  if (r == 0) return std::exp(-s * s);
  Eigen::MatrixXd m(r, r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) m(i, j) = bessel_i(i - j, 2.0 * s);
  return std::exp(-s * s) * m.partialPivLu().determinant();
}

double flat_toeplitz_hankel(double t, long r) {
  check_r(r);
  if (t < 0) throw DomainError("t must be non-negative");
  if (r == 0) return std::exp(-2.0 * t * t);
  Eigen::MatrixXd m(r, r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) m(i, j) = bessel_i(i - j, 4.0 * t) - bessel_i(i + j + 2, 4.0 * t);
  return std::exp(-2.0 * t * t) * m.partialPivLu().determinant();
}

double discrete_bessel_series(double s, long u, long v) {
  const double x = 2.0 * s;
  double sum = 0.0;
  for (long k = 0; k < 100000; ++k) {
    const double term = bessel_j(u + k, x) * bessel_j(v + k, x);
    sum += term;
    if (u + k > x && v + k > x && std::fabs(term) < 1e-18 * (1.0 + std::fabs(sum))) break;
  }
  return sum;
}

double discrete_bessel_kernel(double s, long u, long v) {
  check_s(s);
  const double x = 2.0 * s;
  if (u != v) {
    return s * (bessel_j(u - 1, x) * bessel_j(v, x) - bessel_j(u, x) * bessel_j(v - 1, x)) /
           static_cast<double>(u - v);
  }
  if (u < 1) return discrete_bessel_series(s, u, v);
  return s * (bessel_j(u, x) * bessel_j_order_derivative(u - 1, x) -
              bessel_j(u - 1, x) * bessel_j_order_derivative(u, x));
}

double discrete_bessel_fredholm(double s, long r, long size) {
  check_s(s);
  if (size < 1) throw DomainError("size must be positive");
  Eigen::MatrixXd m(size, size);
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j)
      m(i, j) = (i == j ? 1.0 : 0.0) - discrete_bessel_kernel(s, r + 1 + i, r + 1 + j);
  return m.partialPivLu().determinant();
}

VerblunskySequence verblunsky(double s, long count) {
  check_s(s);
  if (count < 0) throw DomainError("count must be non-negative");
  std::vector<double> c(static_cast<std::size_t>(count + 2));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = bessel_i(static_cast<long>(k), 2.0 * s);

  VerblunskySequence out;
  out.s = s;
  out.norms.push_back(c[0]);
  std::vector<double> p{1.0};  // monic Phi_n, ascending coefficients
  for (long n = 0; n < count; ++n) {
    // Orthogonality of Phi_{n+1} = z Phi_n - a Phi_n^* against 1.
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      num += p[k] * c[k + 1];
      den += p[p.size() - 1 - k] * c[k];
    }
    const double a = num / den;
    if (!(1.0 - a * a > 1e-15)) throw ConvergenceError("Verblunsky recursion is ill-conditioned");
    std::vector<double> next(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + 1] += p[k];
      next[k] -= a * p[p.size() - 1 - k];
    }
    p.swap(next);
    out.alpha.push_back(a);
    out.norms.push_back(out.norms.back() * (1.0 - a * a));
  }
  return out;
}

double dpii_residual(double s, long r) {
  if (r < 1) throw DomainError("dPII needs r >= 1");
  const auto v = verblunsky(s, r + 2);
  const auto& a = v.alpha;
  return -s * (1.0 - a[r] * a[r]) * (a[r + 1] + a[r - 1]) - (r + 1.0) * a[r];
}

ResidualReport ablowitz_ladik_residual(double s, long r, double step) {
  if (r < 1) throw DomainError("Ablowitz-Ladik needs r >= 1");
  if (!(step > 0) || step >= s) throw DomainError("step must be in (0, s)");
  const auto mid = verblunsky(s, r + 2).alpha;
  const double rhs = (1.0 - mid[r] * mid[r]) * (mid[r + 1] - mid[r - 1]);
  auto at = [&](double d) {
    const double up = verblunsky(s + d, r + 1).alpha[r];
    const double dn = verblunsky(s - d, r + 1).alpha[r];
    return (up - dn) / (2.0 * d) - rhs;
  };
  ResidualReport rep;
  rep.step = step;
  rep.residual = at(step);
  rep.residual_half = at(0.5 * step);
  rep.location = {s, static_cast<double>(r)};
  return rep;
}

double flat_opuc_ratio(double t, long r) {
  check_r(r);
  if (!(t > 0)) throw DomainError("t must be positive");
  const long k = 2 * r + 2;
  const auto v = verblunsky(2.0 * t, k);
  const double b = v.alpha[k - 1];
  const double lhs = flat_toeplitz_hankel(t, r) / flat_toeplitz_hankel(t, r + 1);
  return std::fabs(lhs - (1.0 + b) / v.norms[k]);
}

}  // namespace png
