#include "pngtoda/hit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pngtoda/errors.hpp"
#include "pngtoda/rng.hpp"

namespace png {

std::vector<BarrierOp> barrier_ops(const HeightFunction& h, double a, double b) {
  if (!(a <= b)) throw DomainError("barrier_ops needs a <= b");
  std::vector<BarrierOp> ops;
  ops.push_back({BarrierOp::Kind::Point, a, 0.0, h.eval(a)});
  if (a == b) return ops;

  std::vector<double> cuts{a};
  std::vector<double> spikes;
  for (const auto& p : h.pieces())
    if (p.at > a && p.at < b) cuts.push_back(p.at);
  for (const auto& s : h.spikes())
    if (s.at > a && s.at < b) {
      cuts.push_back(s.at);
      spikes.push_back(s.at);
    }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    if (k > 0 && std::binary_search(spikes.begin(), spikes.end(), lo))
      ops.push_back({BarrierOp::Kind::Point, lo, 0.0, h.eval(lo)});
    ops.push_back({BarrierOp::Kind::Segment, lo, hi - lo, h.piece_value(0.5 * (lo + hi))});
  }
  ops.push_back({BarrierOp::Kind::Point, b, 0.0, h.eval(b)});
  return ops;
}

namespace {

// Lazily extended table of e^{s Delta}(0, d), truncated once it underflows.
class HeatTable {
 public:
  explicit HeatTable(double s) : s_(s) {}
  double operator()(long d) {
    std::size_t k = static_cast<std::size_t>(std::labs(d));
    if (k >= cutoff_) return 0.0;
    while (vals_.size() <= k) {
      double v = heat_entry(s_, static_cast<long>(vals_.size()));
      if (v < 1e-300 && static_cast<double>(vals_.size()) > 2.0 * s_) {
        cutoff_ = vals_.size();
        return 0.0;
      }
      vals_.push_back(v);
    }
    return vals_[k];
  }

 private:
  double s_;
  std::vector<double> vals_;
  std::size_t cutoff_ = static_cast<std::size_t>(-1);
};

struct SegmentPair {
  Eigen::MatrixXd nohit;
  Eigen::MatrixXd hit;
};

SegmentPair segment_matrices(Height level, double s, Window w) {
  const long n = w.size();
  HeatTable heat(s);
  SegmentPair out{Eigen::MatrixXd(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out.nohit(i, j) = heat(j - i);
  if (level.is_neg_inf()) return out;
  const long c = level.value();
  out.hit = out.nohit;
  for (long i = 0; i < n; ++i) {
    const long u = w.lo + i;
    for (long j = 0; j < n; ++j) {
      const long v = w.lo + j;
      if (u > c && v > c) {
        const double refl = heat(2 * c - u - v);
        out.nohit(i, j) -= refl;
        out.hit(i, j) = refl;
      } else {
        out.nohit(i, j) = 0.0;
      }
    }
  }
  return out;
}

void check_sub(Window inner, Window sub) {
  if (sub.lo < inner.lo || sub.hi > inner.hi || sub.size() <= 0)
    throw DomainError("row/column window must lie inside the path window");
}

Eigen::MatrixXd selector(Window inner, Window rows) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rows.size(), inner.size());
  for (long i = 0; i < rows.size(); ++i) p(i, rows.lo + i - inner.lo) = 1.0;
  return p;
}

void mask_columns(Eigen::MatrixXd& m, Window inner, long c, bool keep_above) {
  for (long j = 0; j < inner.size(); ++j) {
    const bool above = inner.lo + j > c;
    if (above != keep_above) m.col(j).setZero();
  }
}

}  // namespace

IntegerKernel nohit_constant(Height level, double s, Window w) {
  if (s < 0) throw DomainError("negative duration");
  return IntegerKernel(w, segment_matrices(level, s, w).nohit);
}

IntegerKernel nohit_constant_uniformized(Height level, double s, Window w, double tol) {
  if (s < 0) throw DomainError("negative duration");
  const long n = w.size();
  std::vector<char> alive(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) alive[i] = level.is_neg_inf() || w.lo + i > level.value();

  Eigen::MatrixXd power = Eigen::MatrixXd::Zero(n, n);
  for (long i = 0; i < n; ++i)
    if (alive[i]) power(i, i) = 1.0;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  const double rate = 2.0 * s;
  double weight = std::exp(-rate);
  for (long k = 0;; ++k) {
    sum += weight * power;
    // Past k = 2 * rate the Poisson tail is below twice the current weight.
    if (k + 1 > 2.0 * rate && weight < 0.5 * tol) break;
    if (k > 100000) throw ConvergenceError("uniformisation did not converge");
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, n);
    for (long j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (j > 0) next.col(j) += 0.5 * power.col(j - 1);
      if (j + 1 < n) next.col(j) += 0.5 * power.col(j + 1);
    }
    power.swap(next);
    weight *= rate / (k + 1.0);
  }
  return IntegerKernel(w, std::move(sum));
}

Eigen::MatrixXd hit_block(const HeightFunction& h, double a, double b, Window inner, Window rows,
                          Window cols) {
  check_sub(inner, rows);
  check_sub(inner, cols);
  if (a > b) return Eigen::MatrixXd::Zero(rows.size(), cols.size());
  const auto ops = barrier_ops(h, a, b);
  Eigen::MatrixXd prefix = selector(inner, rows);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows.size(), cols.size());
  double pending = 0.0;  // free stretches not yet applied to prefix
  for (const auto& op : ops) {
    if (op.level.is_neg_inf()) {
      pending += op.length;
      continue;
    }
    if (pending > 0.0) {
      prefix = prefix * heat_block(pending, inner, inner);
      pending = 0.0;
    }
    const double rest = b - (op.at + op.length);
    const Eigen::MatrixXd tail = heat_block(rest, inner, cols);
    if (op.kind == BarrierOp::Kind::Point) {
      Eigen::MatrixXd caught = prefix;
      mask_columns(caught, inner, op.level.value(), false);
      out.noalias() += caught * tail;
      mask_columns(prefix, inner, op.level.value(), true);
    } else {
      const auto seg = segment_matrices(op.level, op.length, inner);
      out.noalias() += (prefix * seg.hit) * tail;
      prefix = prefix * seg.nohit;
    }
  }
  return out;
}

Eigen::MatrixXd nohit_block(const HeightFunction& h, double a, double b, Window inner,
                            Window rows, Window cols) {
  check_sub(inner, rows);
  check_sub(inner, cols);
  const auto ops = barrier_ops(h, a, b);
  Eigen::MatrixXd prefix = selector(inner, rows);
  for (const auto& op : ops) {
    if (op.kind == BarrierOp::Kind::Point) {
      if (!op.level.is_neg_inf()) mask_columns(prefix, inner, op.level.value(), true);
    } else {
      prefix = prefix * segment_matrices(op.level, op.length, inner).nohit;
    }
  }
  return prefix.middleCols(cols.lo - inner.lo, cols.size());
}

IntegerKernel hit(const HeightFunction& h, double a, double b, Window w) {
  return IntegerKernel(w, hit_block(h, a, b, w, w, w));
}

IntegerKernel nohit(const HeightFunction& h, double a, double b, Window w) {
  return IntegerKernel(w, nohit_block(h, a, b, w, w, w));
}

McEstimate mc_walk_oracle(const HeightFunction& h, double a, double b, long u,
                          std::optional<long> v, long samples, std::uint64_t seed,
                          bool hit_event) {
  if (!(a <= b)) throw DomainError("mc_walk_oracle needs a <= b");
  if (samples <= 0) throw DomainError("mc_walk_oracle needs a positive sample count");
  auto rng = make_rng(seed, 0);
  std::exponential_distribution<double> wait(2.0);
  std::bernoulli_distribution coin(0.5);
  long count = 0;
  for (long k = 0; k < samples; ++k) {
    long pos = u;
    double time = a;
    bool met = Height(pos) <= h.eval(a);
    while (true) {
      const double next = time + wait(rng);
      const double stop = std::min(next, b);
      if (!met && Height(pos) <= h.sup_over(time, stop)) met = true;
      if (next >= b) break;
      pos += coin(rng) ? 1 : -1;
      time = next;
    }
    if (met == hit_event && (!v || pos == *v)) ++count;
  }
  const double p = static_cast<double>(count) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
}

}  // namespace png
