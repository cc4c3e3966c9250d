#include "pngtoda/fredholm.hpp"

#include <cmath>

#include "pngtoda/errors.hpp"

namespace png {

FredholmResult fredholm_det(const BlockKernel& k) {
  const long n = k.blocks(), m = k.block_size;
  const long dim = n * m;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(dim, dim) - k.matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  FredholmResult res;
  res.value = lu.determinant();
  res.block_size = m;
  // Columns of (I-K)^{-1} at each block's first index; Q_ij = R(i*m, j*m).
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(dim, n);
  for (long j = 0; j < n; ++j) rhs(j * m, j) = 1.0;
  Eigen::MatrixXd cols = lu.solve(rhs);
  Eigen::MatrixXd q(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) q(i, j) = cols(i * m, j);
  if (q.allFinite()) res.q = std::move(q);
  return res;
}

Height admissible_floor(const HeightFunction& h, double t, double x) {
  return h.running_max(t, x);
}

FredholmResult png_cdf(const HeightFunction& h, double t, const std::vector<double>& xs,
                       const std::vector<long>& rs, const FredholmOptions& opts) {
  check_points(xs, rs);
  if (!(t >= 0) || !std::isfinite(t)) throw DomainError("time must be finite and non-negative");
  if (h.semicontinuity() != Semicontinuity::Upper)
    throw DomainError("initial data must be upper semicontinuous");
  if (opts.block_size < 1 || opts.buffer < 0 || opts.max_doublings < 1)
    throw DomainError("bad truncation options");

  bool below = false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (Height(rs[i]) < admissible_floor(h, t, xs[i])) below = true;
  if (below && !opts.raw_below_floor) {
    FredholmResult r;
    r.value = 0.0;
    r.below_floor = true;
    return r;
  }

  KernelOptions ko{opts.block_size, opts.buffer};
  FredholmResult cur = fredholm_det(matrix_kernel(h, t, xs, rs, ko));
  cur.below_floor = below;
  if (!opts.adaptive) return cur;
  for (int d = 0; d < opts.max_doublings; ++d) {
    ko.block_size *= 2;
    ko.buffer *= 2;
    FredholmResult next = fredholm_det(matrix_kernel(h, t, xs, rs, ko));
    next.below_floor = below;
    next.tail_estimate = std::fabs(next.value - cur.value);
    cur = std::move(next);
    if (cur.tail_estimate < opts.tolerance) {
      cur.converged = true;
      return cur;
    }
  }
  cur.converged = false;
  return cur;
}

}  // namespace png
