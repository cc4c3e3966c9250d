#include "pngtoda/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "pngtoda/errors.hpp"
#include "pngtoda/fredholm.hpp"
#include "pngtoda/parallel.hpp"
#include "pngtoda/rng.hpp"
#include "pngtoda/stats.hpp"

namespace png {

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index) {
  return make_rng(master, index)();
}

namespace {

void check_batch_args(double t, const std::vector<double>& xs, long n_samples) {
  if (!(t >= 0) || !std::isfinite(t)) throw DomainError("t must be finite and >= 0");
  if (xs.empty()) throw DomainError("need at least one point");
  if (!std::is_sorted(xs.begin(), xs.end()) ||
      std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw DomainError("points must be strictly increasing");
  if (n_samples < 1) throw DomainError("n_samples must be positive");
}

CdfEstimate binomial(long hits, long n) {
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

std::vector<Height> sample_with(Sampler s, const HeightFunction& h, double t,
                                const std::vector<double>& xs, const PoissonField& f) {
  return s == Sampler::EventDriven ? sample_event_driven(h, t, xs, f)
                                   : sample_lastpassage(h, t, xs, f);
}

// sup over [lo, hi] of p + q for upper semicontinuous p, q: both are constant
// between the union of their jump points, so checking jumps, endpoints and
// midpoints is enough.
Height sup_sum(const HeightFunction& p, const HeightFunction& q, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (const auto* g : {&p, &q}) {
    for (const auto& b : g->pieces())
      if (b.at > lo && b.at < hi) cuts.push_back(b.at);
    for (const auto& s : g->spikes())
      if (s.at > lo && s.at < hi) cuts.push_back(s.at);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Height best = Height::neg_inf();
  auto probe = [&](double x) {
    const Height a = p.eval(x), b = q.eval(x);
    if (a.finite() && b.finite()) best = std::max(best, Height(a.value() + b.value()));
  };
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    probe(cuts[k]);
    if (k + 1 < cuts.size()) probe(0.5 * (cuts[k] + cuts[k + 1]));
  }
  return best;
}

// P(sup_x [h(t, x; g) + f(x)] <= 0) by simulation.
CdfEstimate below_negative(const HeightFunction& f, const HeightFunction& g, double t, long n,
                           std::uint64_t master) {
  const auto [flo, fhi] = f.finite_support();
  const auto [glo, ghi] = g.finite_support();
  const double lo = std::max(flo, glo - t), hi = std::min(fhi, ghi + t);
  if (lo > hi) return {1.0, 0.0, n};
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("skew reversal needs a bounded region where both sides are finite");
  std::vector<char> hit(static_cast<std::size_t>(n));
  parallel_for(n, [&](long i) {
    const auto field = generate_field(sample_seed(master, i), t, std::vector<Apex>{{lo, hi}});
    const auto profile = evolve_event_driven(g, t, field);
    const Height s = sup_sum(profile, f, lo, hi);
    hit[i] = !(s > Height(0));
  });
  return binomial(std::count(hit.begin(), hit.end(), 1), n);
}

std::vector<double> column(const SampleBatch& b, std::size_t k) {
  std::vector<double> out(static_cast<std::size_t>(b.n_samples));
  for (long i = 0; i < b.n_samples; ++i) {
    const Height v = b.at(i, k);
    out[i] = v.finite() ? static_cast<double>(v.value()) : -std::numeric_limits<double>::max();
  }
  return out;
}

}  // namespace

SampleBatch simulate_batch(const HeightFunction& h, double t, const std::vector<double>& xs,
                           long n_samples, std::uint64_t master_seed, Sampler sampler) {
  check_batch_args(t, xs, n_samples);
  SampleBatch b{h, t, xs, n_samples, {}, {}};
  b.heights.resize(static_cast<std::size_t>(n_samples) * xs.size());
  b.seeds.resize(static_cast<std::size_t>(n_samples));
  parallel_for(n_samples, [&](long i) {
    const std::uint64_t s = sample_seed(master_seed, i);
    b.seeds[i] = s;
    const auto row = sample_with(sampler, h, t, xs, generate_field(s, t, xs));
    std::copy(row.begin(), row.end(), b.heights.begin() + i * static_cast<long>(xs.size()));
  });
  return b;
}

CdfEstimate empirical_cdf(const SampleBatch& batch, const std::vector<long>& rs) {
  if (rs.size() != batch.xs.size()) throw DomainError("rs and xs differ in length");
  long hits = 0;
  for (long i = 0; i < batch.n_samples; ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < rs.size() && ok; ++k) ok = batch.at(i, k) <= Height(rs[k]);
    hits += ok;
  }
  return binomial(hits, batch.n_samples);
}

CdfEstimate estimate_cdf(const HeightFunction& h, double t, const std::vector<double>& xs,
                         const std::vector<long>& rs, long n_samples, std::uint64_t seed) {
  check_batch_args(t, xs, n_samples);
  if (rs.size() != xs.size()) throw DomainError("rs and xs differ in length");
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (Height(rs[k]) < admissible_floor(h, t, xs[k])) return {0.0, 0.0, n_samples};
  return empirical_cdf(simulate_batch(h, t, xs, n_samples, seed), rs);
}

HeightFunction random_walk_profile(double rho, double L, std::uint64_t seed) {
  if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("rho must be positive");
  if (!(L > 0) || !std::isfinite(L)) throw DomainError("L must be positive");
  auto rng = make_rng(seed, 1);
  // Jumps on (0, L] accumulate to the right of 0, jumps on [-L, 0) to the left.
  auto side = [&](std::vector<std::pair<double, int>>& jumps) {
    for (int sign : {+1, -1}) {
      std::exponential_distribution<double> gap(sign > 0 ? rho : 1.0 / rho);
      for (double y = gap(rng); y <= L; y += gap(rng)) jumps.emplace_back(y, sign);
    }
    std::sort(jumps.begin(), jumps.end());
  };
  std::vector<std::pair<double, int>> right, left;
  side(right);
  side(left);

  std::vector<Breakpoint> pieces;
  Height::rep v = 0;
  for (const auto& [y, s] : left) v -= s;  // value at -L
  pieces.push_back({-L, v});
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    v += it->second;
    pieces.push_back({-it->first, v});
  }
  for (const auto& [y, s] : right) {
    v += s;
    pieces.push_back({y, v});
  }
  pieces.push_back({L, Height::neg_inf()});
  return HeightFunction(Height::neg_inf(), std::move(pieces));
}

InvarianceResult invariance_test(double rho, double L, double t, long n_samples,
                                 std::uint64_t seed) {
  constexpr int kSteps = 4;
  constexpr int kBins = 5;
  constexpr double kSpacing = 0.5;
  const std::vector<double> xs{0.0, 0.5, 1.0, 1.5, 2.0};
  if (!(t >= 0)) throw DomainError("t must be >= 0");
  if (!(L > xs.back() + t)) throw DomainError("L must exceed 2 + t so the cones see only the walk");
  if (n_samples < 2) throw DomainError("n_samples must be at least 2");

  std::vector<std::array<int, kSteps>> inc(static_cast<std::size_t>(n_samples));
  parallel_for(n_samples, [&](long i) {
    const std::uint64_t s = sample_seed(seed, i);
    const auto h0 = random_walk_profile(rho, L, s);
    const auto hs = sample_lastpassage(h0, t, xs, generate_field(s, t, xs));
    for (int k = 0; k < kSteps; ++k)
      inc[i][k] = static_cast<int>(hs[k + 1].value() - hs[k].value());
  });

  const double mu_up = rho * kSpacing, mu_down = kSpacing / rho;
  std::array<double, kBins> p{};
  for (int b = 1; b < kBins - 1; ++b) p[b] = stats::skellam_pmf(b - 2, mu_up, mu_down);
  double low = 0.0;
  for (long k = -2; k > -200; --k) low += stats::skellam_pmf(k, mu_up, mu_down);
  p[0] = low;
  p[kBins - 1] = 1.0 - low - p[1] - p[2] - p[3];

  InvarianceResult r;
  for (int k = 0; k < kSteps; ++k) {
    std::array<long, kBins> count{};
    for (const auto& row : inc) ++count[std::clamp(row[k] + 2, 0, kBins - 1)];
    for (int b = 0; b < kBins; ++b) {
      const double e = p[b] * static_cast<double>(n_samples);
      r.chi_square += (count[b] - e) * (count[b] - e) / e;
    }
  }
  r.dof = kSteps * (kBins - 1);
  r.p_value = stats::chi_square_pvalue(r.chi_square, r.dof);

  double sum = 0.0, sq = 0.0;
  for (const auto& row : inc) {
    const double d = row[0] + row[1];  // h(t, 1) - h(t, 0)
    sum += d;
    sq += d * d;
  }
  const double n = static_cast<double>(n_samples);
  r.mean_increment = sum / n;
  r.mean_stderr = std::sqrt(std::max(0.0, sq / n - r.mean_increment * r.mean_increment) / (n - 1));
  return r;
}

SkewReversalResult skew_reversal_test(const HeightFunction& f, const HeightFunction& g, double t,
                                      long n_samples, std::uint64_t seed) {
  if (!(t >= 0)) throw DomainError("t must be >= 0");
  if (n_samples < 1) throw DomainError("n_samples must be positive");
  const auto l = below_negative(f, g, t, n_samples, sample_seed(seed, 0));
  const auto r = below_negative(g, f, t, n_samples, sample_seed(seed, 1));
  SkewReversalResult out{l.estimate, r.estimate, l.stderr_, r.stderr_, 0.0};
  const double se = std::hypot(l.stderr_, r.stderr_);
  if (se > 0)
    out.z = (l.estimate - r.estimate) / se;
  else if (l.estimate != r.estimate)
    out.z = std::numeric_limits<double>::infinity();
  return out;
}

TwoSampleResult reflection_test(const HeightFunction& h, double t, double x, long n_samples,
                                std::uint64_t seed) {
  const auto a = simulate_batch(h, t, {x}, n_samples, sample_seed(seed, 0));
  const auto b = simulate_batch(h.reflect(), t, {-x}, n_samples, sample_seed(seed, 1));
  const auto ks = stats::ks_two_sample(column(a, 0), column(b, 0));
  return {ks.statistic, ks.p_value};
}

TwoSampleResult shift_test(const HeightFunction& h, double t, double x, double y, long n_samples,
                           std::uint64_t seed) {
  const auto a = simulate_batch(h, t, {x}, n_samples, sample_seed(seed, 0));
  const auto b = simulate_batch(h.shift(y), t, {x + y}, n_samples, sample_seed(seed, 1));
  const auto ks = stats::ks_two_sample(column(a, 0), column(b, 0));
  return {ks.statistic, ks.p_value};
}

}  // namespace png
