#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include "pngtoda/closed_forms.hpp"
#include "pngtoda/errors.hpp"
#include "pngtoda/fredholm.hpp"
#include "pngtoda/integrable.hpp"
#include "pngtoda/simulate.hpp"

#ifndef PNGTODA_GIT_REVISION
#define PNGTODA_GIT_REVISION "unknown"
#endif
#ifndef PNGTODA_VERSION
#define PNGTODA_VERSION "0.0.0"
#endif

namespace png::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0e", v);
  return buf;
}

void provenance(Table& t, const RunConfig& c) {
  t.meta("tool", std::string("png_toda ") + PNGTODA_VERSION);
  t.meta("git_revision", PNGTODA_GIT_REVISION);
  t.meta("command", c.command + (c.kind.empty() ? "" : " " + c.kind));
}

FredholmOptions fredholm_options(const RunConfig& c) {
  FredholmOptions o;
  o.block_size = c.block_size;
  o.buffer = c.buffer;
  o.tolerance = c.tolerance;
  return o;
}

StencilOptions stencil_options(const RunConfig& c) { return {c.block_size, c.buffer}; }

void truncation_meta(Table& t, const RunConfig& c) {
  t.meta("tolerance", format_double(c.tolerance) + " (successive window doublings)");
  t.meta("block_size", std::to_string(c.block_size));
  t.meta("buffer", std::to_string(c.buffer));
}

double check_tol(const RunConfig& c, double fallback) {
  return c.check_tolerance > 0 ? c.check_tolerance : fallback;
}

// Second-order pass: Richardson ratio near 4 and a small residual, or a
// residual already at rounding level where the ratio carries no information.
bool order_ok(const ResidualReport& r, double tol) {
  const double ratio = r.richardson_ratio();
  const bool rounding = std::fabs(r.residual) < 1e-10 && std::fabs(r.residual_half) < 1e-10;
  return std::fabs(r.residual) <= tol && (rounding || (ratio >= 3.5 && ratio <= 4.5));
}

CommandResult cmd_cdf(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  provenance(t, c);
  t.meta("initial", c.height().describe());
  truncation_meta(t, c);
  t.column("t", "time", "evaluation time");
  t.column("xs", "position", "points x_i, ';'-separated");
  t.column("rs", "level", "levels r_i, ';'-separated");
  t.column("F", "prob;abs<=" + sci(c.tolerance), "P(h(t,x_i) <= r_i for all i), Fredholm determinant");
  t.column("converged", "bool", "1 if window doubling met the tolerance");
  t.column("block_size", "count", "final truncation M per point");
  t.column("tail", "abs", "change of F under the last window doubling");
  t.column("below_floor", "bool", "1 if some r_i is below the deterministic floor (F = 0 exactly)");
  const auto h = c.height();
  for (double time : c.ts)
    for (const auto& rs : c.r_vectors()) {
      const auto res = png_cdf(h, time, c.xs, rs, fredholm_options(c));
      out.unconverged |= !res.converged;
      t.row({num(time), list(c.xs), list(rs), num(res.value), num(long(res.converged)),
             num(res.block_size), num(res.tail_estimate), num(long(res.below_floor))});
    }
  return out;
}

CommandResult cmd_simulate(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  provenance(t, c);
  t.meta("initial", c.height().describe());
  t.meta("seed", std::to_string(c.seed));
  t.meta("samples", std::to_string(c.samples));
  t.meta("sampler", c.sampler);
  t.column("t", "time", "evaluation time");
  t.column("sample", "index", "sample index within the batch for this t");
  t.column("sample_seed", "seed", "Poisson field seed derived from (seed, t index, sample)");
  for (std::size_t k = 0; k < c.xs.size(); ++k)
    t.column("h_" + std::to_string(k + 1), "height",
             "h(t, " + format_double(c.xs[k]) + "), -inf outside the reachable region");
  if (c.sampler == "both") t.column("agree", "bool", "1 if event-driven and last-passage heights agree");
  const auto h = c.height();
  for (std::size_t ti = 0; ti < c.ts.size(); ++ti) {
    const std::uint64_t master = sample_seed(c.seed, ti);
    const bool ed = c.sampler == "event";
    const auto a = simulate_batch(h, c.ts[ti], c.xs, c.samples, master,
                                  ed ? Sampler::EventDriven : Sampler::LastPassage);
    std::optional<SampleBatch> b;
    if (c.sampler == "both") b = simulate_batch(h, c.ts[ti], c.xs, c.samples, master, Sampler::EventDriven);
    for (long i = 0; i < c.samples; ++i) {
      std::vector<Cell> row{num(c.ts[ti]), num(i), text(std::to_string(a.seeds[i]))};
      row.back().numeric = true;
      bool agree = true;
      for (std::size_t k = 0; k < c.xs.size(); ++k) {
        row.push_back(num(a.at(i, k)));
        if (b) agree &= a.at(i, k) == b->at(i, k);
      }
      if (b) {
        row.push_back(num(long(agree)));
        out.check_failed |= !agree;
      }
      t.row(std::move(row));
    }
  }
  return out;
}

CommandResult cmd_compare(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  const double zmax = check_tol(c, 4.0);
  provenance(t, c);
  t.meta("initial", c.height().describe());
  t.meta("seed", std::to_string(c.seed));
  t.meta("samples", std::to_string(c.samples));
  truncation_meta(t, c);
  t.meta("check", "|z| <= " + format_double(zmax));
  t.column("t", "time", "evaluation time");
  t.column("xs", "position", "points x_i");
  t.column("rs", "level", "levels r_i");
  t.column("F", "prob;abs<=" + sci(c.tolerance), "Fredholm determinant");
  t.column("converged", "bool", "Fredholm window doubling met the tolerance");
  t.column("mc", "prob", "Monte Carlo frequency, last-passage sampler");
  t.column("mc_stderr", "prob", "binomial standard error of mc");
  t.column("null_stderr", "prob", "sqrt(F(1-F)/n), the standard error if F is exact");
  t.column("z", "sigma", "(mc - F) / null_stderr; 0 when both are exactly 0 or 1");
  t.column("pass", "bool", "|z| within the check bound");
  const auto h = c.height();
  for (std::size_t ti = 0; ti < c.ts.size(); ++ti) {
    const double time = c.ts[ti];
    const auto batch = simulate_batch(h, time, c.xs, c.samples, sample_seed(c.seed, ti));
    for (const auto& rs : c.r_vectors()) {
      const auto f = png_cdf(h, time, c.xs, rs, fredholm_options(c));
      out.unconverged |= !f.converged;
      const auto mc = empirical_cdf(batch, rs);
      const double se = std::sqrt(std::max(0.0, f.value * (1.0 - f.value)) / c.samples);
      double z = 0.0;
      if (se > 0)
        z = (mc.estimate - f.value) / se;
      else if (std::fabs(mc.estimate - f.value) > 1e-12)
        z = std::numeric_limits<double>::infinity();
      const bool pass = std::fabs(z) <= zmax;
      out.check_failed |= !pass;
      t.row({num(time), list(c.xs), list(rs), num(f.value), num(long(f.converged)),
             num(mc.estimate), num(mc.stderr_), num(se), num(z), num(long(pass))});
    }
  }
  return out;
}

CommandResult cmd_toda_check(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  provenance(t, c);
  const bool ratio_kind = c.kind == "ratio";
  double tol = 1e-4;
  if (c.kind == "nonabelian") tol = 5e-4;
  if (c.kind == "kernel-eta" || c.kind == "kernel-zeta") tol = 1e-5;
  if (ratio_kind) tol = 1e-6;
  tol = check_tol(c, tol);
  if (c.kind != "1d") t.meta("initial", c.height().describe());
  t.meta("block_size", std::to_string(c.block_size) + " (fixed for all stencil points)");
  t.meta("buffer", std::to_string(c.buffer));
  t.meta("step", format_double(c.step));
  t.meta("check", ratio_kind ? "|residual| <= " + format_double(tol)
                             : "ratio in [3.5, 4.5] and |residual| <= " + format_double(tol));
  t.column("kind", "-", "identity checked");
  t.column("t", "time", "evaluation time");
  t.column("xs", "position", "points x_i");
  t.column("rs", "level", "levels r_i");
  t.column("step", "light-cone", "finite-difference step (unused for ratio)");
  t.column("residual", "abs", "residual at step (max entry for matrix identities)");
  t.column("residual_half", "abs", "residual at step/2");
  t.column("ratio", "-", "residual / residual_half, about 4 for second order");
  t.column("order", "-", "log2 of |ratio|");
  t.column("pass", "bool", "check passed");

  auto emit = [&](double time, const std::vector<double>& xs, const std::vector<long>& rs,
                  const ResidualReport& r) {
    const bool pass = order_ok(r, tol);
    out.check_failed |= !pass;
    t.row({text(c.kind), num(time), list(xs), list(rs), num(r.step), num(r.residual),
           num(r.residual_half), num(r.richardson_ratio()), num(r.observed_order()),
           num(long(pass))});
  };
  const auto so = stencil_options(c);
  for (double time : c.ts) {
    if (c.kind == "1d") {
      for (long r : c.levels()) emit(time, {}, {r}, toda_1d_residual(time, r, c.step, so));
    } else if (c.kind == "scalar") {
      const auto h = c.height();
      for (double x : c.xs)
        for (long r : c.levels())
          emit(time, {x}, {r}, toda_scalar_residual(h, time, x, r, c.step, so));
    } else {
      const auto h = c.height();
      for (const auto& rs : c.r_vectors()) {
        if (ratio_kind) {
          const double v = ratio_identity_check(h, time, c.xs, rs, so);
          const bool pass = v <= tol;
          out.check_failed |= !pass;
          t.row({text(c.kind), num(time), list(c.xs), list(rs), num(kNaN), num(v), num(kNaN),
                 num(kNaN), num(kNaN), num(long(pass))});
        } else if (c.kind == "nonabelian") {
          emit(time, c.xs, rs, nonabelian_residual(h, time, c.xs, rs, c.step, so));
        } else {
          const auto dir = c.kind == "kernel-eta" ? LightCone::Eta : LightCone::Zeta;
          emit(time, c.xs, rs, kernel_evolution_residual(h, time, c.xs, rs, dir, c.step, 10, so));
        }
      }
    }
  }
  return out;
}

CommandResult cmd_painleve(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  const double tol = check_tol(c, 1e-5);
  provenance(t, c);
  t.meta("step", format_double(c.step));
  t.meta("check", "|dpii| <= 1e-08, AL ratio in [3.5, 4.5] and |AL residual| <= " + format_double(tol));
  t.column("s", "-", "weight parameter of e^{s(z+1/z)}");
  t.column("r", "index", "Verblunsky index");
  t.column("alpha", "-", "Verblunsky coefficient alpha_r");
  t.column("dpii", "abs<=1e-08", "discrete Painleve II residual");
  t.column("al_residual", "abs", "Ablowitz-Ladik residual at step");
  t.column("al_residual_half", "abs", "Ablowitz-Ladik residual at step/2");
  t.column("al_ratio", "-", "Richardson ratio");
  t.column("pass", "bool", "check passed");
  for (double s : c.ss)
    for (long r : c.levels()) {
      const double d = dpii_residual(s, r);
      const auto al = ablowitz_ladik_residual(s, r, c.step);
      const bool pass = std::fabs(d) <= 1e-8 && order_ok(al, tol);
      out.check_failed |= !pass;
      t.row({num(s), num(r), num(verblunsky(s, r + 1).alpha[r]), num(d), num(al.residual),
             num(al.residual_half), num(al.richardson_ratio()), num(long(pass))});
    }
  return out;
}

CommandResult cmd_closed_form(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  const double tol = check_tol(c, 1e-8);
  provenance(t, c);
  truncation_meta(t, c);
  t.meta("check", "|fredholm - closed_form| <= " + format_double(tol));
  const bool wedge = c.kind == "narrow-wedge";
  t.column("t", "time", "evaluation time");
  t.column("x", "position", wedge ? "evaluation point" : "evaluation point (flat data: any)");
  t.column("r", "level", "level");
  t.column("closed_form", "prob", wedge ? "e^{-s^2} det(I_{i-j}(2s)), s = sqrt(t^2 - x^2)"
                                        : "e^{-2t^2} det(I_{i-j}(4t) - I_{i+j+2}(4t))");
  t.column("fredholm", "prob;abs<=" + sci(c.tolerance), "png_cdf at the same point");
  t.column("abs_diff", "abs", "|fredholm - closed_form|");
  t.column(wedge ? "discrete_bessel" : "opuc_residual", wedge ? "prob" : "abs",
           wedge ? "det(I - discrete Bessel kernel) on {r+1, ...}, 80 terms"
                 : "|F_r/F_{r+1} - (1 + alpha_{2r+1})/N_{2r+2}| at s = 2t");
  t.column("pass", "bool", "check passed");
  const auto h = wedge ? HeightFunction::narrow_wedge(0.0) : HeightFunction::flat(0);
  for (double time : c.ts)
    for (double x : c.xs)
      for (long r : c.levels()) {
        double closed = 0.0, extra = kNaN;
        if (wedge) {
          if (!(std::fabs(x) < time)) throw DomainError("narrow-wedge closed form needs |x| < t");
          const double s = std::sqrt(time * time - x * x);
          closed = narrow_wedge_toeplitz(s, r);
          extra = r >= 0 ? discrete_bessel_fredholm(s, r, 80) : 0.0;
        } else {
          closed = flat_toeplitz_hankel(time, r);
          if (time > 0 && r >= 0) extra = flat_opuc_ratio(time, r);
        }
        const auto f = png_cdf(h, time, {x}, {r}, fredholm_options(c));
        out.unconverged |= !f.converged;
        const double diff = std::fabs(f.value - closed);
        const bool pass = diff <= tol;
        out.check_failed |= !pass;
        t.row({num(time), num(x), num(r), num(closed), num(f.value), num(diff), num(extra),
               num(long(pass))});
      }
  return out;
}

CommandResult cmd_initdata(const RunConfig& c) {
  CommandResult out;
  Table& t = out.table;
  provenance(t, c);
  t.meta("initial", c.height().describe());
  t.meta("step", format_double(c.step));
  t.meta("check", "q <= 1e-09, inverse <= 1e-10, d_eta <= 5 step");
  t.column("xs", "position", "points x_i");
  t.column("rs", "level", "levels r_i");
  t.column("q_dev", "abs<=1e-09", "max |Q(t=0) - (I - P[>=h, <r])|");
  t.column("inverse_dev", "abs<=1e-10", "max |(I - P[>=h, <r])(I + P[>=h, <=r]) - I|");
  t.column("d_eta_dev", "abs<=5*step", "one-sided eta difference of Q vs the touch formula");
  t.column("v_dev", "abs", "the same comparison for V = -d_eta Q Q^{-1}");
  t.column("pass", "bool", "check passed");
  const auto h = c.height();
  for (const auto& rs : c.r_vectors()) {
    const auto r = initial_data_check(h, c.xs, rs, c.step, stencil_options(c));
    const bool pass = r.q_deviation <= 1e-9 && r.inverse_deviation <= 1e-10 &&
                      r.d_eta_deviation <= 5.0 * c.step;
    out.check_failed |= !pass;
    t.row({list(c.xs), list(rs), num(r.q_deviation), num(r.inverse_deviation),
           num(r.d_eta_deviation), num(r.v_deviation), num(long(pass))});
  }
  return out;
}

}  // namespace

CommandResult run_command(const RunConfig& c) {
  if (c.command == "cdf") return cmd_cdf(c);
  if (c.command == "simulate") return cmd_simulate(c);
  if (c.command == "compare") return cmd_compare(c);
  if (c.command == "toda-check") return cmd_toda_check(c);
  if (c.command == "painleve") return cmd_painleve(c);
  if (c.command == "closed-form") return cmd_closed_form(c);
  if (c.command == "initdata") return cmd_initdata(c);
  throw ConfigError(c.where("command"), "unknown command");
}

}  // namespace png::cli
