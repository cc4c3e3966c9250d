#include "pngtoda/integrable.hpp"

#include <algorithm>
#include <cmath>

#include "pngtoda/errors.hpp"
#include "pngtoda/hit.hpp"

namespace png {

Stencil Stencil::moved(double d_eta, double d_zeta) const {
  Stencil out = *this;
  out.t += 0.5 * (d_eta + d_zeta);
  for (double& x : out.xs) x += 0.5 * (d_eta - d_zeta);
  return out;
}

FredholmResult fixed_cdf(const HeightFunction& h, const Stencil& p, const std::vector<long>& rs,
                         const StencilOptions& opts) {
  FredholmOptions fo;
  fo.block_size = opts.block_size;
  fo.buffer = opts.buffer;
  fo.adaptive = false;
  return png_cdf(h, p.t, p.xs, rs, fo);
}

namespace {

std::vector<long> shifted(std::vector<long> rs, long d) {
  for (long& r : rs) r += d;
  return rs;
}

double positive_log(double f) {
  if (!(f > 0)) throw DomainError("distribution function vanishes on the stencil");
  return std::log(f);
}

Eigen::MatrixXd q_of(const FredholmResult& f) {
  if (!f.q) throw DomainError("Q is singular or undefined at a stencil point");
  return *f.q;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

ResidualReport toda_scalar_residual(const HeightFunction& h, double t, double x, long r,
                                    double step, const StencilOptions& opts) {
  if (!(step > 0) || step >= t) throw DomainError("step must lie in (0, t)");
  auto logf = [&](double tt, double xx, long rr) {
    return positive_log(fixed_cdf(h, {tt, {xx}}, {rr}, opts).value);
  };
  const double f0 = fixed_cdf(h, {t, {x}}, {r}, opts).value;
  const double fp = fixed_cdf(h, {t, {x}}, {r + 1}, opts).value;
  const double fm = fixed_cdf(h, {t, {x}}, {r - 1}, opts).value;
  const double l0 = positive_log(f0);
  const double rhs = fp * fm / (f0 * f0) - 1.0;
  auto at = [&](double d) {
    const double dtt = (logf(t + d, x, r) - 2.0 * l0 + logf(t - d, x, r)) / (d * d);
    const double dxx = (logf(t, x + d, r) - 2.0 * l0 + logf(t, x - d, r)) / (d * d);
    return 0.25 * (dtt - dxx) - rhs;
  };
  ResidualReport rep;
  rep.step = step;
  rep.residual = at(step);
  rep.residual_half = at(0.5 * step);
  rep.location = {t, x, static_cast<double>(r)};
  return rep;
}

ResidualReport toda_1d_residual(double t, long r, double step, const StencilOptions& opts) {
  if (r < 1) throw DomainError("the 1D Toda check needs r >= 1");
  if (!(step > 0) || step >= t) throw DomainError("step must lie in (0, t)");
  const HeightFunction flat = HeightFunction::flat();
  auto f = [&](double tt, long rr) { return fixed_cdf(flat, {tt, {0.0}}, {rr}, opts).value; };
  auto g = [&](double tt) { return positive_log(f(tt, r)) - positive_log(f(tt, r - 1)); };
  const double fm2 = f(t, r - 2), fm1 = f(t, r - 1), f0 = f(t, r), fp1 = f(t, r + 1);
  const double rhs = fp1 * fm1 / (f0 * f0) - f0 * fm2 / (fm1 * fm1);
  const double g0 = g(t);
  auto at = [&](double d) { return 0.25 * (g(t + d) - 2.0 * g0 + g(t - d)) / (d * d) - rhs; };
  ResidualReport rep;
  rep.step = step;
  rep.residual = at(step);
  rep.residual_half = at(0.5 * step);
  rep.location = {t, static_cast<double>(r)};
  return rep;
}

ResidualReport nonabelian_residual(const HeightFunction& h, double t, const std::vector<double>& xs,
                                   const std::vector<long>& rs, double step,
                                   const StencilOptions& opts) {
  check_points(xs, rs);
  if (!(step > 0) || step >= t) throw DomainError("step must lie in (0, t)");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!(Height(rs[i]) > h.running_max(t, xs[i])))
      throw DomainError("non-Abelian Toda needs r_i above the admissible floor");
  const Stencil c{t, xs};
  auto q = [&](const Stencil& p, long d) { return q_of(fixed_cdf(h, p, shifted(rs, d), opts)); };
  const Eigen::MatrixXd qm = q(c, -1), q0 = q(c, 0), qp = q(c, 1);
  // U_{r+1} - U_r = Q_{r+1} Q_r^{-1} - Q_r Q_{r-1}^{-1}
  const Eigen::MatrixXd du = qp * q0.inverse() - q0 * qm.inverse();
  auto v_at = [&](double dz, double d) {
    const Stencil p = c.moved(0.0, dz);
    const Eigen::MatrixXd deta = (q(p.moved(d, 0.0), 0) - q(p.moved(-d, 0.0), 0)) / (2.0 * d);
    return Eigen::MatrixXd(-deta * q(p, 0).inverse());
  };
  auto at = [&](double d) {
    const Eigen::MatrixXd dv = (v_at(d, d) - v_at(-d, d)) / (2.0 * d);
    return max_abs(dv + du);
  };
  ResidualReport rep;
  rep.step = step;
  rep.residual = at(step);
  rep.residual_half = at(0.5 * step);
  rep.location = {t};
  rep.location.insert(rep.location.end(), xs.begin(), xs.end());
  return rep;
}

ResidualReport kernel_evolution_residual(const HeightFunction& h, double t,
                                         const std::vector<double>& xs, const std::vector<long>& rs,
                                         LightCone direction, double step, long sub_window,
                                         const StencilOptions& opts) {
  check_points(xs, rs);
  if (!(step > 0) || step >= t) throw DomainError("step must lie in (0, t)");
  if (sub_window < 1 || sub_window + 1 > opts.block_size) throw DomainError("sub-window too large");
  const KernelOptions ko{opts.block_size, opts.buffer};
  const long n = static_cast<long>(xs.size()), m = opts.block_size;
  const Stencil c{t, xs};
  const bool eta = direction == LightCone::Eta;
  auto kernel = [&](const Stencil& p, long d) { return matrix_kernel(h, p.t, p.xs, shifted(rs, d), ko); };
  const BlockKernel k0 = kernel(c, 0), km = kernel(c, -1);
  Eigen::MatrixXd target(n * sub_window, n * sub_window);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      for (long u = 0; u < sub_window; ++u)
        for (long v = 0; v < sub_window; ++v) {
          const long a = i * m + u + (eta ? 1 : 0), b = j * m + v + (eta ? 0 : 1);
          target(i * sub_window + u, j * sub_window + v) = km.matrix(a, b) - k0.matrix(a, b);
        }
  auto at = [&](double d) {
    const Stencil up = eta ? c.moved(d, 0.0) : c.moved(0.0, d);
    const Stencil dn = eta ? c.moved(-d, 0.0) : c.moved(0.0, -d);
    const Eigen::MatrixXd diff = (kernel(up, 0).matrix - kernel(dn, 0).matrix) / (2.0 * d);
    double worst = 0.0;
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        for (long u = 0; u < sub_window; ++u)
          for (long v = 0; v < sub_window; ++v) {
            worst = std::max(worst, std::fabs(diff(i * m + u, j * m + v) -
                                              target(i * sub_window + u, j * sub_window + v)));
          }
    return worst;
  };
  ResidualReport rep;
  rep.step = step;
  rep.residual = at(step);
  rep.residual_half = at(0.5 * step);
  rep.location = {t};
  rep.location.insert(rep.location.end(), xs.begin(), xs.end());
  return rep;
}

double ratio_identity_check(const HeightFunction& h, double t, const std::vector<double>& xs,
                            const std::vector<long>& rs, const StencilOptions& opts) {
  const FredholmResult f0 = fixed_cdf(h, {t, xs}, rs, opts);
  const FredholmResult f1 = fixed_cdf(h, {t, xs}, shifted(rs, 1), opts);
  if (!(f0.value > 0)) throw DomainError("F(r) vanishes");
  return std::fabs(f1.value / f0.value - q_of(f0).determinant());
}

namespace {

HeightFunction lowered(const HeightFunction& h) {
  auto pieces = h.pieces();
  for (auto& p : pieces) p.value = p.value - 1;
  auto spikes = h.spikes();
  for (auto& s : spikes) s.value = s.value - 1;
  return HeightFunction(h.left_value() - 1, pieces, spikes);
}

void keep_at_most(Eigen::RowVectorXd& v, const Window& w, long cap) {
  for (long k = 0; k < w.size(); ++k)
    if (w.lo + k > cap) v(k) = 0.0;
}

}  // namespace

Eigen::MatrixXd PinnedPathMatrices::q() const {
  return Eigen::MatrixXd::Identity(ge_lt.rows(), ge_lt.cols()) - ge_lt;
}

Eigen::MatrixXd PinnedPathMatrices::q_inverse() const {
  return Eigen::MatrixXd::Identity(ge_le.rows(), ge_le.cols()) + ge_le;
}

Eigen::MatrixXd PinnedPathMatrices::d_eta_q() const { return touch_plus - touch_then_hit_plus; }

Eigen::MatrixXd PinnedPathMatrices::u() const {
  return q() * (Eigen::MatrixXd::Identity(gt_le.rows(), gt_le.cols()) + gt_le);
}

Eigen::MatrixXd PinnedPathMatrices::v() const { return -d_eta_q() * q_inverse(); }

PinnedPathMatrices pinned_matrices_t0(const HeightFunction& h, const std::vector<double>& xs,
                                      const std::vector<long>& rs, long buffer) {
  check_points(xs, rs);
  const long n = static_cast<long>(xs.size());
  for (long i = 0; i < n; ++i)
    if (Height(rs[i]) < h.eval(xs[i])) throw DomainError("pinned matrices need r_i >= h(x_i)");
  const auto [rmin, rmax] = std::minmax_element(rs.begin(), rs.end());
  const Window w{*rmin - buffer, *rmax + buffer + 1};
  const HeightFunction below = lowered(h);

  // Killed semigroups between consecutive points: strict (> h) and weak (>= h).
  std::vector<Eigen::MatrixXd> strict, weak;
  for (long k = 0; k + 1 < n; ++k) {
    strict.push_back(nohit_block(h, xs[k], xs[k + 1], w, w, w));
    weak.push_back(nohit_block(below, xs[k], xs[k + 1], w, w, w));
  }

  PinnedPathMatrices out;
  for (auto* m : {&out.ge_lt, &out.ge_le, &out.gt_le, &out.touch_plus, &out.touch_then_hit_plus})
    *m = Eigen::MatrixXd::Zero(n, n);
  auto idx = [&](long level) { return level - w.lo; };

  for (long i = 0; i < n; ++i) {
    Eigen::RowVectorXd lt = Eigen::RowVectorXd::Zero(w.size());
    Eigen::RowVectorXd le = lt, gt = lt, a = lt, b = lt, c = lt;
    lt(idx(rs[i])) = le(idx(rs[i])) = gt(idx(rs[i])) = 1.0;
    a(idx(rs[i] + 1)) = 1.0;  // phase A: no touch of h yet
    for (long k = i; k + 1 < n; ++k) {
      const long j = k + 1;
      lt = lt * weak[k];
      le = le * weak[k];
      gt = gt * strict[k];
      const Eigen::RowVectorXd a_next = a * strict[k];
      b = (a * weak[k] - a_next) + b * weak[k];  // phase B: touched h, no level touch since
      c = c * weak[k];                          // phase C: touched h, then a level
      a = a_next;

      out.ge_lt(i, j) = lt(idx(rs[j]));
      out.ge_le(i, j) = le(idx(rs[j]));
      out.gt_le(i, j) = gt(idx(rs[j]));
      out.touch_plus(i, j) = b(idx(rs[j])) + c(idx(rs[j]));
      out.touch_then_hit_plus(i, j) = c(idx(rs[j]));

      keep_at_most(lt, w, rs[j] - 1);
      keep_at_most(le, w, rs[j]);
      keep_at_most(gt, w, rs[j]);
      keep_at_most(a, w, rs[j]);
      keep_at_most(b, w, rs[j]);
      keep_at_most(c, w, rs[j]);
      c(idx(rs[j])) += b(idx(rs[j]));
      b(idx(rs[j])) = 0.0;
    }
  }
  return out;
}

double InitialDataReport::max_deviation() const {
  return std::max({q_deviation, inverse_deviation, d_eta_deviation, v_deviation});
}

InitialDataReport initial_data_check(const HeightFunction& h, const std::vector<double>& xs,
                                     const std::vector<long>& rs, double step,
                                     const StencilOptions& opts) {
  const PinnedPathMatrices pm = pinned_matrices_t0(h, xs, rs, opts.buffer);
  const long n = static_cast<long>(xs.size());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Stencil c{0.0, xs};
  const Eigen::MatrixXd q0 = q_of(fixed_cdf(h, c, rs, opts));
  const Eigen::MatrixXd q1 = q_of(fixed_cdf(h, c.moved(step, 0.0), rs, opts));
  const Eigen::MatrixXd deta = (q1 - q0) / step;

  InitialDataReport rep;
  rep.step = step;
  rep.q_deviation = max_abs(q0 - pm.q());
  rep.inverse_deviation = max_abs(pm.q() * pm.q_inverse() - id);
  rep.d_eta_deviation = max_abs(deta - pm.d_eta_q());
  rep.v_deviation = max_abs(-deta * q0.inverse() - pm.v());
  return rep;
}

}  // namespace png
