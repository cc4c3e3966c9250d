#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pngtoda/height.hpp"

namespace png {

struct SpaceTimePoint {
  double time;
  double pos;
};

// Closed apex interval [lo, hi] at time t; its backward cone is
// {(u, y) : 0 <= u <= t, dist(y, [lo, hi]) <= t - u}.
struct Apex {
  double lo;
  double hi;
};

// Rate-2 Poisson points on the union of backward cones of the apexes. The
// bounding rectangle is [0, t] x [x_lo, x_hi].
struct PoissonField {
  std::uint64_t seed = 0;
  double t = 0.0;
  std::vector<Apex> apexes;
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::vector<SpaceTimePoint> points;  // sorted by time

  // True when the backward cone of every (t, x) with x in [lo, hi] lies inside
  // the region, so heights there depend only on these points.
  bool covers(double t_eval, double lo, double hi) const;
  bool covers(double t_eval, const std::vector<double>& xs) const;
  double area() const;
};

PoissonField generate_field(std::uint64_t seed, double t, std::vector<Apex> apexes);
PoissonField generate_field(std::uint64_t seed, double t, const std::vector<double>& xs);
// Deterministic field with the given points (tests); points outside the cones are dropped.
PoissonField field_from_points(double t, std::vector<Apex> apexes,
                               std::vector<SpaceTimePoint> points);

// Deterministic PNG evolution to time t with a +1 nucleation at every field
// point. The returned profile is exact on the apex intervals of the field.
HeightFunction evolve_event_driven(const HeightFunction& h, double t, const PoissonField& field);

// Both samplers throw DomainError if the field does not cover the cones of (t, x_i).
std::vector<Height> sample_event_driven(const HeightFunction& h, double t,
                                        const std::vector<double>& xs, const PoissonField& field);
std::vector<Height> sample_lastpassage(const HeightFunction& h, double t,
                                       const std::vector<double>& xs, const PoissonField& field);

// Longest chain in the product order on (a, b), patience sorting.
long longest_chain(std::vector<std::pair<double, double>> ab);

enum class Sampler { EventDriven, LastPassage };

// Per-sample seeds come from (master, index), so a batch is reproducible
// whatever the thread count.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t index);

struct SampleBatch {
  HeightFunction h;
  double t = 0.0;
  std::vector<double> xs;
  long n_samples = 0;
  std::vector<Height> heights;  // row-major, n_samples x xs.size()
  std::vector<std::uint64_t> seeds;

  Height at(long sample, std::size_t k) const { return heights[sample * xs.size() + k]; }
};

SampleBatch simulate_batch(const HeightFunction& h, double t, const std::vector<double>& xs,
                           long n_samples, std::uint64_t master_seed,
                           Sampler sampler = Sampler::LastPassage);

struct CdfEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;  // binomial standard error
  long n_samples = 0;
};

// Empirical frequency of {h(t, x_i) <= r_i for all i}.
CdfEstimate empirical_cdf(const SampleBatch& batch, const std::vector<long>& rs);
// Zero without sampling when some r_i is below the admissible floor.
CdfEstimate estimate_cdf(const HeightFunction& h, double t, const std::vector<double>& xs,
                         const std::vector<long>& rs, long n_samples, std::uint64_t seed);

// Two-sided random walk with up steps at rate rho and down steps at rate 1/rho
// on [-L, L], value 0 at the origin, -inf outside.
HeightFunction random_walk_profile(double rho, double L, std::uint64_t seed);

struct InvarianceResult {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  double mean_increment = 0.0;  // of h(t, 1) - h(t, 0)
  double mean_stderr = 0.0;
};

// Increments of x -> h(t, x) - h(t, 0) over four steps of length 1/2 against
// the stationary Skellam law, binned {<=-2, -1, 0, 1, >=2}.
InvarianceResult invariance_test(double rho, double L, double t, long n_samples,
                                 std::uint64_t seed);

struct SkewReversalResult {
  double lhs = 0.0;  // P(h(t; g) <= -f)
  double rhs = 0.0;  // P(h(t; f) <= -g)
  double lhs_stderr = 0.0;
  double rhs_stderr = 0.0;
  double z = 0.0;
};

// sup_x [h(t, x; g) + f(x)] <= 0 estimated on both sides with independent fields.
// The set where both terms can be finite must be bounded.
SkewReversalResult skew_reversal_test(const HeightFunction& f, const HeightFunction& g, double t,
                                      long n_samples, std::uint64_t seed);

struct TwoSampleResult {
  double statistic = 0.0;  // Kolmogorov-Smirnov D
  double p_value = 1.0;
};

// h(t, x; h0) against h(t, -x; reflected h0), two independent batches.
TwoSampleResult reflection_test(const HeightFunction& h, double t, double x, long n_samples,
                                std::uint64_t seed);
// h(t, x; h0) against h(t, x + y; h0 moved right by y).
TwoSampleResult shift_test(const HeightFunction& h, double t, double x, double y, long n_samples,
                           std::uint64_t seed);

}  // namespace png
