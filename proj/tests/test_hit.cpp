#include <doctest.h>

#include <cmath>
#include <random>

#include "pngtoda/hit.hpp"

using namespace png;

namespace {

constexpr Window kWide{-40, 40};

double interior_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Window w, long lo, long hi) {
  const long off = lo - w.lo, n = hi - lo + 1;
  return (a.block(off, off, n, n) - b.block(off, off, n, n)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd projection_below(Window w, long c) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(w.size(), w.size());
  for (long u = w.lo; u <= std::min(c, w.hi); ++u) p(u - w.lo, u - w.lo) = 1.0;
  return p;
}

}  // namespace

TEST_SUITE("hit") {
  TEST_CASE("constant barrier: reflection formula examples") {
    const auto free = nohit_constant(Height::neg_inf(), 0.9, kWide);
    CHECK((free.matrix() - heat_kernel(0.9, kWide).matrix()).cwiseAbs().maxCoeff() == 0.0);
    const double expect = std::exp(-2.0) * (bessel_i(0, 2.0) - bessel_i(2, 2.0));
    CHECK(nohit_constant(Height(0), 1.0, kWide)(1, 1) == doctest::Approx(expect).epsilon(1e-14));
    const auto k = nohit_constant(Height(2), 0.7, kWide);
    CHECK(k(2, 5) == 0.0);
    CHECK(k(5, 1) == 0.0);
  }

  TEST_CASE("constant barrier: reflection against uniformisation") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> level(-3, 3);
    std::uniform_real_distribution<double> dur(0.05, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
      const Height c(level(rng));
      const double s = dur(rng);
      const Window w{-60, 60};
      const auto a = nohit_constant(c, s, w).matrix();
      const auto b = nohit_constant_uniformized(c, s, w).matrix();
      INFO("level=" << c.value() << " s=" << s);
      CHECK(interior_diff(a, b, w, -10, 10) <= 1e-12);
    }
    const auto a = nohit_constant(Height::neg_inf(), 1.3, Window{-60, 60}).matrix();
    const auto b = nohit_constant_uniformized(Height::neg_inf(), 1.3, Window{-60, 60}).matrix();
    CHECK(interior_diff(a, b, Window{-60, 60}, -10, 10) <= 1e-12);
  }

  TEST_CASE("hit is zero without a barrier or when a > b") {
    const auto far = HeightFunction::narrow_wedge(5.0);
    CHECK(hit(far, 0.0, 1.0, kWide).matrix().cwiseAbs().maxCoeff() == 0.0);
    CHECK(hit(HeightFunction::flat(), 1.0, 0.5, kWide).matrix().cwiseAbs().maxCoeff() == 0.0);
    const auto no = nohit(far, 0.0, 1.0, kWide).matrix();
    CHECK((no - heat_kernel(1.0, kWide).matrix()).cwiseAbs().maxCoeff() <= 1e-15);
  }

  TEST_CASE("narrow wedge factorises at the origin") {
    const auto h = HeightFunction::narrow_wedge(0.0);
    for (auto [a, b] : {std::pair{-0.6, 0.8}, std::pair{-1.5, 0.2}, std::pair{0.0, 1.0}}) {
      const Eigen::MatrixXd ref =
          heat_kernel(-a, kWide).matrix() * projection_below(kWide, 0) * heat_kernel(b, kWide).matrix();
      CHECK(interior_diff(hit(h, a, b, kWide).matrix(), ref, kWide, -8, 8) <= 1e-13);
    }
    CHECK(hit(h, 0.1, 0.9, kWide).matrix().cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("hit against the walk simulation") {
    const auto two = HeightFunction::two_step();
    const long n = 1000000;
    const auto mc = mc_walk_oracle(two, 0.0, 1.0, 3, 2, n, 17);
    const double exact = hit(two, 0.0, 1.0, kWide)(3, 2);
    INFO("mc=" << mc.estimate << " +- " << mc.stderr_ << " exact=" << exact);
    CHECK(std::fabs(mc.estimate - exact) <= 4.0 * mc.stderr_);

    const auto nh = mc_walk_oracle(HeightFunction::flat(), 0.0, 1.0, 1, 1, 400000, 5, false);
    const double reflection = nohit_constant(Height(0), 1.0, kWide)(1, 1);
    CHECK(std::fabs(nh.estimate - reflection) <= 4.0 * nh.stderr_);

    // Spike inside the interval and a start on the barrier.
    const HeightFunction spiky(Height(-1), {{0.6, Height(0)}}, {{0.3, Height(2)}});
    for (auto [u, v] : {std::pair{2L, 1L}, std::pair{3L, 3L}, std::pair{1L, 4L}}) {
      const auto m = mc_walk_oracle(spiky, 0.0, 1.2, u, v, 300000, 23 + u);
      const double e = hit(spiky, 0.0, 1.2, kWide)(u, v);
      INFO("u=" << u << " v=" << v << " mc=" << m.estimate << " exact=" << e);
      CHECK(std::fabs(m.estimate - e) <= 4.0 * m.stderr_ + 1e-12);
    }
  }

  TEST_CASE("walk simulation trivia") {
    const auto far = HeightFunction::narrow_wedge(9.0);
    CHECK(mc_walk_oracle(far, 0.0, 1.0, 0, std::nullopt, 1000, 1).estimate == 0.0);
    const auto total = mc_walk_oracle(HeightFunction::two_step(), 0.0, 1.0, 3, std::nullopt, 2000, 2);
    CHECK(total.estimate <= 1.0);
    const auto a = mc_walk_oracle(HeightFunction::two_step(), 0.0, 1.0, 3, 2, 1000, 9);
    const auto b = mc_walk_oracle(HeightFunction::two_step(), 0.0, 1.0, 3, 2, 1000, 9);
    CHECK(a.estimate == b.estimate);
  }

  TEST_CASE("hit is bounded by the free kernel") {
    for (const auto& h : {HeightFunction::two_step(), HeightFunction::flat(1), HeightFunction::narrow_wedge(0.4)}) {
      const auto p = hit(h, -0.3, 1.4, kWide).matrix();
      const auto q = heat_kernel(1.7, kWide).matrix();
      CHECK(p.minCoeff() >= -1e-12);
      CHECK((p - q).maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("raising the barrier never decreases hit") {
    const HeightFunction low(Height(0), {{0.0, Height(2)}, {1.5, Height(1)}});
    const HeightFunction mid(Height(1), {{0.0, Height(2)}, {1.5, Height(2)}}, {{2.0, Height(4)}});
    const auto high = HeightFunction::flat(4);
    const auto a = hit(low, -0.5, 2.5, kWide).matrix();
    const auto b = hit(mid, -0.5, 2.5, kWide).matrix();
    const auto c = hit(high, -0.5, 2.5, kWide).matrix();
    CHECK((a - b).maxCoeff() <= 1e-12);
    CHECK((b - c).maxCoeff() <= 1e-12);
  }

  TEST_CASE("Chapman-Kolmogorov across an interior split") {
    const Window w{-50, 50};
    const HeightFunction h(Height(0), {{0.0, Height(2)}, {1.5, Height(1)}}, {{0.8, Height(3)}});
    for (double c : {0.4, 1.0, 1.5, 2.2}) {
      const auto whole = nohit(h, -0.5, 2.5, w).matrix();
      const auto split = nohit(h, -0.5, c, w).compose(nohit(h, c, 2.5, w)).matrix();
      INFO("split at " << c);
      CHECK(interior_diff(whole, split, w, -10, 10) <= 1e-10);
    }
  }

  TEST_CASE("continuity from above") {
    // Plateaus of height 3 on [0.5, 0.5 + eps) decrease to a spike at 0.5.
    const HeightFunction base(Height(0), {{0.0, Height(1)}});
    const HeightFunction limit(Height(0), {{0.0, Height(1)}}, {{0.5, Height(3)}});
    const auto target = hit(limit, -0.2, 1.0, kWide).matrix();
    double prev = 1.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
      const HeightFunction h(Height(0), {{0.0, Height(1)}, {0.5, Height(3)}, {0.5 + eps, Height(1)}});
      const double d = interior_diff(hit(h, -0.2, 1.0, kWide).matrix(), target, kWide, -5, 8);
      INFO("eps=" << eps << " diff=" << d);
      CHECK(d <= prev);
      prev = d;
    }
    CHECK(prev <= 1e-4);
    CHECK(interior_diff(hit(base, -0.2, 1.0, kWide).matrix(), target, kWide, -5, 8) > 1e-3);
  }
}
