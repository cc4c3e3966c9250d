#include <doctest.h>

#include <cmath>
#include <random>

#include "pngtoda/stats.hpp"

using namespace png;

TEST_SUITE("stats") {
  TEST_CASE("chi-square tail") {
    for (double x : {0.1, 1.0, 4.0, 12.0})
      CHECK(stats::chi_square_pvalue(x, 2) == doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-14));
    CHECK(stats::chi_square_pvalue(0.0, 5) == 1.0);
    // P(chi^2_1 > z^2) is the two-sided normal tail.
    CHECK(stats::chi_square_pvalue(1.96 * 1.96, 1) == doctest::Approx(stats::normal_two_sided(1.96)).epsilon(1e-12));
    CHECK(stats::normal_two_sided(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-12));
  }

  TEST_CASE("Kolmogorov distribution") {
    CHECK(stats::kolmogorov_survival(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
    CHECK(stats::kolmogorov_survival(1.358) == doctest::Approx(0.05).epsilon(2e-3));
    CHECK(stats::kolmogorov_survival(0.0) == 1.0);
    CHECK(stats::kolmogorov_survival(5.0) < 1e-20);
  }

  TEST_CASE("one-sample KS") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> good(5000), bad(5000);
    for (auto& v : good) v = u(rng);
    for (auto& v : bad) v = std::pow(u(rng), 1.2);
    CHECK(stats::ks_uniform(good).p_value > 1e-3);
    CHECK(stats::ks_uniform(bad).p_value < 1e-6);
    const auto one = stats::ks_uniform({0.5});
    CHECK(one.statistic == doctest::Approx(0.5));
  }

  TEST_CASE("two-sample KS with ties") {
    std::mt19937_64 rng(6);
    std::poisson_distribution<int> p(3.0), q(3.6);
    std::vector<double> a(4000), b(4000), c(4000);
    for (auto& v : a) v = p(rng);
    for (auto& v : b) v = p(rng);
    for (auto& v : c) v = q(rng);
    CHECK(stats::ks_two_sample(a, a).statistic == 0.0);
    CHECK(stats::ks_two_sample(a, a).p_value == 1.0);
    CHECK(stats::ks_two_sample(a, b).p_value > 1e-3);
    CHECK(stats::ks_two_sample(a, c).p_value < 1e-6);
    // D for two tiny samples by hand: {1, 2} vs {2, 3} -> max |F_a - F_b| = 1/2.
    CHECK(stats::ks_two_sample({1.0, 2.0}, {2.0, 3.0}).statistic == doctest::Approx(0.5));
  }

  TEST_CASE("Skellam law against the Poisson convolution") {
    auto poisson = [](long k, double mu) { return std::exp(k * std::log(mu) - mu - std::lgamma(k + 1.0)); };
    for (auto [m1, m2] : {std::pair{0.5, 0.5}, std::pair{0.75, 1.0 / 3.0}, std::pair{2.0, 1.3}}) {
      double total = 0.0;
      for (long k = -8; k <= 8; ++k) {
        double conv = 0.0;
        for (long j = std::max(0L, -k); j < 200; ++j) conv += poisson(j + k, m1) * poisson(j, m2);
        CHECK(stats::skellam_pmf(k, m1, m2) == doctest::Approx(conv).epsilon(1e-12));
        total += conv;
      }
      CHECK(total <= 1.0 + 1e-12);
    }
  }
}
