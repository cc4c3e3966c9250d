#include <algorithm>
#include <cmath>
#include <limits>

#include "pngtoda/errors.hpp"
#include "pngtoda/simulate.hpp"

namespace png {

long longest_chain(std::vector<std::pair<double, double>> ab) {
  std::sort(ab.begin(), ab.end());
  std::vector<double> piles;  // piles[k]: smallest tail b of a chain of length k + 1
  for (const auto& p : ab) {
    auto it = std::upper_bound(piles.begin(), piles.end(), p.second);
    if (it == piles.end())
      piles.push_back(p.second);
    else
      *it = p.second;
  }
  return static_cast<long>(piles.size());
}

namespace {

struct ClosedPiece {
  double lo;
  double hi;
  Height value;
};

std::vector<ClosedPiece> closed_pieces(const HeightFunction& h) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<ClosedPiece> out;
  double lo = -inf;
  Height v = h.left_value();
  for (const auto& p : h.pieces()) {
    if (v.finite()) out.push_back({lo, p.at, v});
    lo = p.at;
    v = p.value;
  }
  if (v.finite()) out.push_back({lo, inf, v});
  for (const auto& s : h.spikes())
    if (s.value.finite()) out.push_back({s.at, s.at, s.value});
  return out;
}

}  // namespace

// Light-cone coordinates a = time + pos, b = time - pos turn Lipschitz-1 paths
// into chains increasing in both coordinates. A point is reachable from the
// start segment [lo, hi] iff a >= lo and b >= -hi, and reaches (t, x) iff
// a <= t + x and b <= t - x.
std::vector<Height> sample_lastpassage(const HeightFunction& h, double t,
                                       const std::vector<double>& xs, const PoissonField& field) {
  if (h.semicontinuity() != Semicontinuity::Upper)
    throw DomainError("PNG evolves upper semicontinuous data");
  if (!field.covers(t, xs)) throw DomainError("Poisson field does not cover the light cones");
  const auto pieces = closed_pieces(h);
  std::vector<Height> out;
  out.reserve(xs.size());
  std::vector<std::pair<double, double>> chain;
  for (double x : xs) {
    std::vector<std::pair<double, double>> cone;
    for (const auto& p : field.points) {
      const double a = p.time + p.pos, b = p.time - p.pos;
      if (a <= t + x && b <= t - x) cone.emplace_back(a, b);
    }
    Height best = Height::neg_inf();
    for (const auto& piece : pieces) {
      const double dist = x < piece.lo ? piece.lo - x : (x > piece.hi ? x - piece.hi : 0.0);
      if (dist > t) continue;
      chain.clear();
      for (const auto& ab : cone)
        if (ab.first >= piece.lo && ab.second >= -piece.hi) chain.push_back(ab);
      best = std::max(best, piece.value + longest_chain(chain));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace png
