#include "pngtoda/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "pngtoda/errors.hpp"
#include "pngtoda/hit.hpp"
#include "pngtoda/parallel.hpp"

namespace png {

Eigen::MatrixXd extended_block(const HeightFunction& h, double t, double xi, double xj,
                               Window rows, Window cols, long buffer) {
  if (t < 0) throw DomainError("negative time");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  if (xi < xj) out -= heat_block(xj - xi, rows, cols);

  const double a = xi - t, b = xj + t;
  if (a > b) return out;
  long top = std::max(rows.hi, cols.hi);
  if (Height m = h.max_finite_value(); m.finite()) top = std::max<long>(top, m.value());
  const Window inner{std::min(rows.lo, cols.lo) - buffer, top + buffer};
  // Both conjugators are triangular, so only xi >= U and eta >= V contribute.
  const Window xi_range{rows.lo, inner.hi};
  const Window eta_range{cols.lo, inner.hi};
  const Eigen::MatrixXd p = hit_block(h, a, b, inner, xi_range, eta_range);
  out.noalias() += triangular_block(t, -1, rows, xi_range) * p * triangular_block(t, +1, eta_range, cols);
  return out;
}

IntegerKernel extended_block(const HeightFunction& h, double t, double xi, double xj, Window w,
                             long buffer) {
  return IntegerKernel(w, extended_block(h, t, xi, xj, w, w, buffer));
}

void check_points(const std::vector<double>& xs, const std::vector<long>& rs) {
  if (xs.empty()) throw DomainError("at least one point is required");
  if (xs.size() != rs.size()) throw DomainError("xs and rs differ in length");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) throw DomainError("points must be finite");
    if (i > 0 && !(xs[i - 1] < xs[i])) throw DomainError("points must be strictly increasing");
  }
}

BlockKernel matrix_kernel(const HeightFunction& h, double t, const std::vector<double>& xs,
                          const std::vector<long>& rs, const KernelOptions& opts) {
  check_points(xs, rs);
  if (opts.block_size < 1 || opts.buffer < 0) throw DomainError("bad truncation options");
  const long n = static_cast<long>(xs.size());
  const long m = opts.block_size;
  BlockKernel k{xs, rs, m, Eigen::MatrixXd(n * m, n * m)};
  parallel_for(n * n, [&](long idx) {
    const long i = idx / n, j = idx % n;
    const Window rows{rs[i] + 1, rs[i] + m};
    const Window cols{rs[j] + 1, rs[j] + m};
    k.matrix.block(i * m, j * m, m, m) = extended_block(h, t, xs[i], xs[j], rows, cols, opts.buffer);
  });
  return k;
}

BlockKernel theta_conjugate(const BlockKernel& k, int power) {
  BlockKernel out = k;
  const long n = k.blocks(), m = k.block_size;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long u = 1; u <= m; ++u)
        for (long v = 1; v <= m; ++v) {
          const double lg = power * ((i + 1) * std::log1p(double(u) * u) - (j + 1) * std::log1p(double(v) * v));
          out.matrix(i * m + u - 1, j * m + v - 1) *= std::exp(lg);
        }
  return out;
}

}  // namespace png
