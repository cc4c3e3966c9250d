#include <algorithm>
#include <cmath>
#include <random>

#include "pngtoda/errors.hpp"
#include "pngtoda/rng.hpp"
#include "pngtoda/simulate.hpp"

namespace png {

namespace {

bool in_cones(const std::vector<Apex>& apexes, double t, const SpaceTimePoint& p) {
  for (const auto& a : apexes) {
    const double d = p.pos < a.lo ? a.lo - p.pos : (p.pos > a.hi ? p.pos - a.hi : 0.0);
    if (d <= t - p.time) return true;
  }
  return false;
}

void check_apexes(double t, const std::vector<Apex>& apexes) {
  if (!(t >= 0) || !std::isfinite(t)) throw DomainError("field time must be finite and >= 0");
  if (apexes.empty()) throw DomainError("field needs at least one apex");
  for (const auto& a : apexes)
    if (!(a.lo <= a.hi) || !std::isfinite(a.lo) || !std::isfinite(a.hi))
      throw DomainError("apex intervals must be finite with lo <= hi");
}

PoissonField empty_field(double t, std::vector<Apex> apexes) {
  check_apexes(t, apexes);
  PoissonField f;
  f.t = t;
  f.x_lo = apexes.front().lo;
  f.x_hi = apexes.front().hi;
  for (const auto& a : apexes) {
    f.x_lo = std::min(f.x_lo, a.lo);
    f.x_hi = std::max(f.x_hi, a.hi);
  }
  f.x_lo -= t;
  f.x_hi += t;
  f.apexes = std::move(apexes);
  return f;
}

}  // namespace

bool PoissonField::covers(double t_eval, double lo, double hi) const {
  if (!(t_eval >= 0) || t_eval > t || lo > hi) return false;
  const double slack = t - t_eval;
  std::vector<Apex> grown;
  for (const auto& a : apexes) grown.push_back({a.lo - slack, a.hi + slack});
  std::sort(grown.begin(), grown.end(), [](const Apex& p, const Apex& q) { return p.lo < q.lo; });
  double reach = lo;
  for (const auto& g : grown) {
    if (g.hi < reach) continue;
    if (g.lo > reach) break;
    reach = g.hi;
    if (reach >= hi) return true;
  }
  return false;
}

bool PoissonField::covers(double t_eval, const std::vector<double>& xs) const {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return covers(t_eval, x, x); });
}

double PoissonField::area() const { return t * (x_hi - x_lo); }

PoissonField generate_field(std::uint64_t seed, double t, std::vector<Apex> apexes) {
  PoissonField f = empty_field(t, std::move(apexes));
  f.seed = seed;
  auto rng = make_rng(seed, 0);
  std::poisson_distribution<long> count(2.0 * f.area());
  std::uniform_real_distribution<double> time(0.0, t), pos(f.x_lo, f.x_hi);
  const long n = f.area() > 0 ? count(rng) : 0;
  for (long k = 0; k < n; ++k) {
    const SpaceTimePoint p{time(rng), pos(rng)};
    if (in_cones(f.apexes, t, p)) f.points.push_back(p);
  }
  std::sort(f.points.begin(), f.points.end(),
            [](const SpaceTimePoint& a, const SpaceTimePoint& b) { return a.time < b.time; });
  return f;
}

PoissonField generate_field(std::uint64_t seed, double t, const std::vector<double>& xs) {
  std::vector<Apex> apexes;
  for (double x : xs) apexes.push_back({x, x});
  return generate_field(seed, t, std::move(apexes));
}

PoissonField field_from_points(double t, std::vector<Apex> apexes,
                               std::vector<SpaceTimePoint> points) {
  PoissonField f = empty_field(t, std::move(apexes));
  for (const auto& p : points)
    if (p.time >= 0 && p.time <= t && in_cones(f.apexes, t, p)) f.points.push_back(p);
  std::sort(f.points.begin(), f.points.end(),
            [](const SpaceTimePoint& a, const SpaceTimePoint& b) { return a.time < b.time; });
  return f;
}

}  // namespace png
