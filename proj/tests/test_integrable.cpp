#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "pngtoda/errors.hpp"
#include "pngtoda/hit.hpp"
#include "pngtoda/integrable.hpp"

using namespace png;

namespace {

double toeplitz_oracle(double s, long r) {
  Eigen::MatrixXd m(r, r);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) m(i, j) = boost::math::cyl_bessel_i(double(std::labs(i - j)), 2.0 * s);
  return std::exp(-s * s) * (r == 0 ? 1.0 : m.determinant());
}

void check_second_order(const ResidualReport& rep, double bound) {
  INFO("residual=" << rep.residual << " half=" << rep.residual_half << " ratio=" << rep.richardson_ratio());
  CHECK(rep.residual <= bound);
  CHECK(rep.richardson_ratio() >= 3.5);
  CHECK(rep.richardson_ratio() <= 4.5);
}

// Walk from r_0 at xs[0] to r_last at xs.back() staying >= h, strictly below
// r_l at the interior points.
struct PinnedMc {
  double estimate;
  double stderr_;
};

PinnedMc pinned_mc(const HeightFunction& h, const std::vector<double>& xs, const std::vector<long>& rs,
                   long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> wait(2.0);
  std::bernoulli_distribution coin(0.5);
  long count = 0;
  for (long k = 0; k < samples; ++k) {
    long pos = rs.front();
    double time = xs.front();
    bool ok = true;
    std::size_t next_point = 1;
    while (ok) {
      const double jump = time + wait(rng);
      const double stop = std::min(jump, xs.back());
      if (Height(pos) < h.sup_over(time, stop)) ok = false;
      while (ok && next_point + 1 < xs.size() && xs[next_point] < jump) {
        if (pos >= rs[next_point]) ok = false;
        ++next_point;
      }
      if (jump >= xs.back()) break;
      pos += coin(rng) ? 1 : -1;
      time = jump;
    }
    if (ok && pos == rs.back()) ++count;
  }
  const double p = double(count) / double(samples);
  return {p, std::sqrt(p * (1.0 - p) / double(samples))};
}

}  // namespace

TEST_SUITE("integrable") {
  TEST_CASE("scalar Toda: second order at interior points") {
    check_second_order(toda_scalar_residual(HeightFunction::narrow_wedge(0.0), 1.0, 0.25, 2, 1e-2), 1e-3);
    check_second_order(toda_scalar_residual(HeightFunction::two_step(), 1.0, 0.7, 4, 1e-2), 1e-3);
  }

  TEST_CASE("scalar Toda: large levels") {
    const auto rep = toda_scalar_residual(HeightFunction::narrow_wedge(0.0), 1.0, 0.25, 20, 1e-2);
    CHECK(std::fabs(rep.residual) <= 1e-6);
  }

  TEST_CASE("scalar Toda at the floor and its argument checks") {
    // At the floor F_{r-1} = 0 and the equation still holds.
    CHECK(std::fabs(toda_scalar_residual(HeightFunction::two_step(), 1.0, 0.7, 2, 1e-2).residual) <= 1e-9);
    CHECK_THROWS_AS(toda_scalar_residual(HeightFunction::two_step(), 1.0, 0.7, 1, 1e-2), DomainError);
    CHECK_THROWS_AS(toda_scalar_residual(HeightFunction::flat(), 0.5, 0.0, 2, 0.6), DomainError);
  }

  TEST_CASE("1D Toda for flat data") {
    const auto one = toda_1d_residual(0.6, 2, 1e-2);
    check_second_order(one, 1e-3);
    CHECK(std::fabs(toda_1d_residual(0.6, 22, 1e-2).residual) <= 1e-6);
    // The scalar equation on flat data is the same identity in other variables.
    const auto scalar = toda_scalar_residual(HeightFunction::flat(), 0.6, 0.0, 2, 1e-2);
    check_second_order(scalar, 1e-3);
    CHECK_THROWS_AS(toda_1d_residual(0.6, 0, 1e-2), DomainError);
  }

  TEST_CASE("non-Abelian Toda") {
    check_second_order(nonabelian_residual(HeightFunction::narrow_wedge(0.0), 1.0, {-0.2, 0.3}, {1, 1}, 1e-2), 5e-3);
    const auto far = nonabelian_residual(HeightFunction::narrow_wedge(0.0), 1.0, {-0.2, 0.3}, {11, 11}, 1e-2);
    CHECK(far.residual <= 1e-6);
  }

  TEST_CASE("non-Abelian Toda with one point tracks the scalar equation") {
    // For n = 1 the residual is the difference of the scalar residuals at r + 1
    // and r, both of which are second order.
    const auto h = HeightFunction::narrow_wedge(0.0);
    const auto one = nonabelian_residual(h, 1.0, {0.25}, {2}, 1e-2);
    const auto s2 = toda_scalar_residual(h, 1.0, 0.25, 2, 1e-2);
    const auto s3 = toda_scalar_residual(h, 1.0, 0.25, 3, 1e-2);
    check_second_order(one, 1e-3);
    CHECK(one.residual <= 2.0 * (std::fabs(s2.residual) + std::fabs(s3.residual)) + 1e-9);
  }

  TEST_CASE("kernel evolution identities") {
    for (auto dir : {LightCone::Eta, LightCone::Zeta}) {
      const auto rep = kernel_evolution_residual(HeightFunction::narrow_wedge(0.0), 1.0, {-0.2, 0.3}, {1, 1}, dir, 1e-2);
      check_second_order(rep, 1e-4);
    }
    CHECK_THROWS_AS(kernel_evolution_residual(HeightFunction::flat(), 1.0, {0.0}, {1}, LightCone::Eta, 1e-2, 60),
                    DomainError);
  }

  TEST_CASE("ratio identity") {
    const auto nw = HeightFunction::narrow_wedge(0.0);
    CHECK(ratio_identity_check(nw, 1.0, {0.0}, {30}) <= 1e-10);
    for (long r = 1; r <= 4; ++r) {
      const auto f = fixed_cdf(nw, {1.0, {0.0}}, {r});
      REQUIRE(f.q.has_value());
      CHECK(std::fabs(toeplitz_oracle(1.0, r + 1) / toeplitz_oracle(1.0, r) - f.q->determinant()) <= 1e-8);
    }
    CHECK(ratio_identity_check(HeightFunction::two_step(), 0.6, {0.2, 0.9}, {3, 3}) <= 1e-6);
  }

  TEST_CASE("light-cone moves") {
    const Stencil s{1.0, {0.1, 0.4}};
    const auto e = s.moved(0.2, 0.0);
    CHECK(e.t == doctest::Approx(1.1));
    CHECK(e.xs[0] == doctest::Approx(0.2));
    const auto z = s.moved(0.0, 0.2);
    CHECK(z.t == doctest::Approx(1.1));
    CHECK(z.xs[1] == doctest::Approx(0.3));
  }

  TEST_CASE("pinned matrices: trivial and inverse identity") {
    const auto one = pinned_matrices_t0(HeightFunction::two_step(), {0.5}, {2});
    CHECK(one.q()(0, 0) == 1.0);
    CHECK(one.ge_lt(0, 0) == 0.0);
    for (const auto& h : {HeightFunction::two_step(), HeightFunction::flat()}) {
      const auto pm = pinned_matrices_t0(h, {-0.5, 0.5, 1.8}, {1, 3, 2});
      const long n = 3;
      CHECK((pm.q() * pm.q_inverse() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
      for (const auto* m : {&pm.ge_lt, &pm.ge_le, &pm.gt_le, &pm.touch_plus, &pm.touch_then_hit_plus}) {
        CHECK(m->triangularView<Eigen::Lower>().toDenseMatrix().cwiseAbs().maxCoeff() == 0.0);
        CHECK(m->minCoeff() >= -1e-14);
        CHECK(m->maxCoeff() <= 1.0 + 1e-14);
      }
      CHECK(pm.v().triangularView<Eigen::Lower>().toDenseMatrix().cwiseAbs().maxCoeff() <= 1e-14);
    }
    CHECK_THROWS_AS(pinned_matrices_t0(HeightFunction::two_step(), {0.5}, {1}), DomainError);
  }

  TEST_CASE("pinned matrices against walk simulation") {
    // Flat data, two points: >= h means avoiding {<= -1}, > h means avoiding {<= 0}.
    const auto flat = HeightFunction::flat();
    const auto pm = pinned_matrices_t0(flat, {0.0, 0.8}, {2, 3});
    const auto weak = mc_walk_oracle(HeightFunction::flat(-1), 0.0, 0.8, 2, 3, 400000, 31, false);
    const auto strict = mc_walk_oracle(flat, 0.0, 0.8, 2, 3, 400000, 37, false);
    CHECK(std::fabs(pm.ge_lt(0, 1) - weak.estimate) <= 4.0 * weak.stderr_);
    CHECK(std::fabs(pm.gt_le(0, 1) - strict.estimate) <= 4.0 * strict.stderr_);

    // Three points with an interior level constraint.
    const auto two = HeightFunction::two_step();
    const std::vector<double> xs{-0.5, 0.5, 1.0};
    const std::vector<long> rs{1, 3, 3};
    const auto p3 = pinned_matrices_t0(two, xs, rs);
    const auto mc = pinned_mc(two, xs, rs, 400000, 41);
    INFO("exact=" << p3.ge_lt(0, 2) << " mc=" << mc.estimate << " +- " << mc.stderr_);
    CHECK(std::fabs(p3.ge_lt(0, 2) - mc.estimate) <= 4.0 * mc.stderr_);
  }

  TEST_CASE("initial data checks") {
    const auto one = initial_data_check(HeightFunction::two_step(), {0.5}, {3});
    CHECK(one.max_deviation() <= 5e-3);
    for (const auto& h : {HeightFunction::two_step(), HeightFunction::flat()}) {
      const auto rep = initial_data_check(h, {0.2, 0.9}, {2, 3});
      CHECK(rep.q_deviation <= 1e-9);
      CHECK(rep.inverse_deviation <= 1e-10);
      CHECK(rep.d_eta_deviation <= 5.0 * rep.step);
    }
  }
}
