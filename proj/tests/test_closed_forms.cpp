#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "pngtoda/closed_forms.hpp"
#include "pngtoda/errors.hpp"
#include "pngtoda/fredholm.hpp"

using namespace png;

namespace {

double moment(double s, long d) { return boost::math::cyl_bessel_i(double(std::labs(d)), 2.0 * s); }

// det(I_{i-j}(2s))_{n x n}, with D_0 = 1.
double toeplitz_det(double s, long n) {
  if (n == 0) return 1.0;
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = moment(s, i - j);
  return m.determinant();
}

// -Phi_n(0) for the monic orthogonal polynomial of degree n, from the moment
// system <Phi_n, z^j> = 0 for j < n.
double minus_phi_at_zero(double s, long n) {
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (long j = 0; j < n; ++j) {
    for (long k = 0; k < n; ++k) a(j, k) = moment(s, k - j);
    b(j) = -moment(s, n - j);
  }
  return -a.fullPivLu().solve(b)(0);
}

double cdf(const HeightFunction& h, double t, double x, long r) {
  const auto res = png_cdf(h, t, {x}, {r});
  REQUIRE(res.converged);
  return res.value;
}

}  // namespace

TEST_SUITE("closed_forms") {
  TEST_CASE("narrow wedge Toeplitz") {
    for (double s : {0.5, 1.0, 2.0}) {
      CHECK(narrow_wedge_toeplitz(s, 0) == doctest::Approx(std::exp(-s * s)).epsilon(1e-15));
      CHECK(narrow_wedge_toeplitz(s, 1) == doctest::Approx(std::exp(-s * s) * moment(s, 0)).epsilon(1e-14));
      for (long r = 2; r <= 8; ++r)
        CHECK(narrow_wedge_toeplitz(s, r) == doctest::Approx(std::exp(-s * s) * toeplitz_det(s, r)).epsilon(1e-12));
    }
    CHECK(std::fabs(narrow_wedge_toeplitz(1.0, 3) - cdf(HeightFunction::narrow_wedge(0.0), 1.0, 0.0, 3)) <= 1e-8);
    CHECK_THROWS_AS(narrow_wedge_toeplitz(1.0, -1), DomainError);
  }

  TEST_CASE("flat Toeplitz plus Hankel") {
    for (double t : {0.5, 1.0}) {
      const double x = 4.0 * t;
      CHECK(flat_toeplitz_hankel(t, 0) == doctest::Approx(std::exp(-2.0 * t * t)).epsilon(1e-15));
      const double r1 = std::exp(-2.0 * t * t) *
                        (boost::math::cyl_bessel_i(0.0, x) - boost::math::cyl_bessel_i(2.0, x));
      CHECK(flat_toeplitz_hankel(t, 1) == doctest::Approx(r1).epsilon(1e-13));
      for (long r = 0; r <= 5; ++r)
        CHECK(std::fabs(flat_toeplitz_hankel(t, r) - cdf(HeightFunction::flat(), t, 0.3, r)) <= 1e-8);
    }
  }

  TEST_CASE("discrete Bessel kernel") {
    CHECK(std::fabs(discrete_bessel_kernel(1e-6, 1, 1)) <= 1e-11);
    CHECK(std::fabs(discrete_bessel_kernel(1e-6, 2, 3)) <= 1e-11);
    for (double s : {0.3, 1.0, 2.5})
      for (long u = -2; u <= 8; ++u)
        for (long v = -2; v <= 8; ++v) {
          INFO("s=" << s << " u=" << u << " v=" << v);
          CHECK(std::fabs(discrete_bessel_kernel(s, u, v) - discrete_bessel_series(s, u, v)) <= 1e-11);
        }
    // The series against boost Bessel values.
    double sum = 0.0;
    for (long k = 0; k < 80; ++k)
      sum += boost::math::cyl_bessel_j(double(3 + k), 2.0) * boost::math::cyl_bessel_j(double(5 + k), 2.0);
    CHECK(discrete_bessel_series(1.0, 3, 5) == doctest::Approx(sum).epsilon(1e-13));
  }

  TEST_CASE("discrete Bessel Fredholm determinant") {
    for (double s : {0.5, 1.0, 2.0})
      for (long r = 0; r <= 6; ++r)
        CHECK(std::fabs(discrete_bessel_fredholm(s, r) - narrow_wedge_toeplitz(s, r)) <= 1e-8);
    // Off-axis narrow wedge: conjugation does not change the determinant.
    const double t = 1.5, x = 0.8, s = std::sqrt(t * t - x * x);
    for (long r = 0; r <= 5; ++r)
      CHECK(std::fabs(cdf(HeightFunction::narrow_wedge(0.0), t, x, r) - discrete_bessel_fredholm(s, r)) <= 1e-8);
  }

  TEST_CASE("Verblunsky coefficients") {
    const auto tiny = verblunsky(1e-4, 6);
    for (double a : tiny.alpha) CHECK(std::fabs(a) <= 1e-3);
    for (double s : {0.5, 1.0, 2.0}) {
      const auto v = verblunsky(s, 10);
      CHECK(v.norms[0] == doctest::Approx(moment(s, 0)).epsilon(1e-13));
      for (long n = 0; n < 10; ++n) {
        INFO("s=" << s << " n=" << n);
        CHECK(std::fabs(v.alpha[n]) < 1.0);
        CHECK(v.alpha[n] == doctest::Approx(minus_phi_at_zero(s, n + 1)).epsilon(1e-9));
        // 1 - a_n^2 = D_{n+2} D_n / D_{n+1}^2 and N_n = D_{n+1} / D_n.
        const double ratio = toeplitz_det(s, n + 2) * toeplitz_det(s, n) / std::pow(toeplitz_det(s, n + 1), 2);
        CHECK(1.0 - v.alpha[n] * v.alpha[n] == doctest::Approx(ratio).epsilon(1e-9));
        CHECK(v.norms[n] == doctest::Approx(toeplitz_det(s, n + 1) / toeplitz_det(s, n)).epsilon(1e-9));
        CHECK(toeplitz_det(s, n + 1) > 0.0);
      }
      // Recomputing with more coefficients leaves the early ones unchanged.
      const auto longer = verblunsky(s, 16);
      for (long n = 0; n < 10; ++n) CHECK(longer.alpha[n] == v.alpha[n]);
    }
  }

  TEST_CASE("discrete Painleve II") {
    CHECK(std::fabs(dpii_residual(1e-3, 2)) <= 1e-8);
    CHECK(std::fabs(dpii_residual(1.0, 2)) <= 1e-8);
    for (double s : {0.5, 1.0, 2.0})
      for (long r = 1; r <= 8; ++r) CHECK(std::fabs(dpii_residual(s, r)) <= 1e-8);
    CHECK_THROWS_AS(dpii_residual(1.0, 0), DomainError);
  }

  TEST_CASE("Ablowitz-Ladik") {
    const auto rep = ablowitz_ladik_residual(1.0, 2, 1e-2);
    INFO("ratio=" << rep.richardson_ratio());
    CHECK(rep.richardson_ratio() >= 3.5);
    CHECK(rep.richardson_ratio() <= 4.5);
    CHECK(std::fabs(ablowitz_ladik_residual(1.0, 2, 5e-3).residual) <= 1e-5);
    CHECK(std::fabs(ablowitz_ladik_residual(0.05, 2, 1e-3).residual) <= 1e-6);
  }

  TEST_CASE("flat ratio through orthogonal polynomials") {
    CHECK(flat_opuc_ratio(0.8, 1) <= 1e-7);
    CHECK(flat_opuc_ratio(0.8, 0) <= 1e-7);
    for (double t : {0.3, 0.6, 1.0})
      for (long r = 0; r <= 4; ++r) CHECK(flat_opuc_ratio(t, r) <= 1e-7);
  }
}
