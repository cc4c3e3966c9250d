#include <doctest.h>

#include <random>

#include "pngtoda/errors.hpp"
#include "pngtoda/height.hpp"

using namespace png;

namespace {

// Upper semicontinuous value by brute force: max of both one-sided limits and
// any spike at x.
Height uc_oracle(const HeightFunction& h, double x) {
  constexpr double eps = 1e-9;
  Height v = std::max(h.piece_value(x - eps), h.piece_value(x + eps));
  for (const auto& s : h.spikes())
    if (s.at == x) v = std::max(v, s.value);
  return v;
}

HeightFunction random_profile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> level(-2, 3), count(0, 5);
  std::uniform_real_distribution<double> gap(0.1, 1.0);
  std::vector<Breakpoint> pieces;
  double at = -2.0;
  for (int k = count(rng); k > 0; --k) {
    at += gap(rng);
    pieces.push_back({at, Height(level(rng))});
  }
  std::vector<Spike> spikes;
  if (count(rng) > 2) spikes.push_back({0.37, Height(4)});
  return HeightFunction(Height(level(rng)), pieces, spikes);
}

}  // namespace

TEST_SUITE("height") {
  TEST_CASE("neg_inf is below every integer and absorbs offsets") {
    const Height ni = Height::neg_inf();
    CHECK(ni < Height(-1000000000));
    CHECK((ni + 5).is_neg_inf());
    CHECK((ni - 5).is_neg_inf());
    CHECK(Height(3) + 2 == Height(5));
    CHECK((-ni).is_pos_inf());
  }

  TEST_CASE("eval follows the upper semicontinuous convention") {
    CHECK(HeightFunction::flat().eval(3.7) == Height(0));
    const auto nw = HeightFunction::narrow_wedge(0.0);
    CHECK(nw.eval(0.0) == Height(0));
    CHECK(nw.eval(0.1).is_neg_inf());
    const HeightFunction up(Height(0), {{1.0, Height(1)}});
    CHECK(up.eval(1.0) == Height(1));
    const HeightFunction down(Height(1), {{1.0, Height(0)}});
    CHECK(down.eval(1.0) == Height(1));
    CHECK(down.eval(1.0 + 1e-12) == Height(0));
  }

  TEST_CASE("two-step preset") {
    const auto h = HeightFunction::two_step();
    CHECK(h.eval(-0.5) == Height(0));
    CHECK(h.eval(0.0) == Height(2));
    CHECK(h.eval(1.0) == Height(2));
    CHECK(h.eval(1.5) == Height(2));
    CHECK(h.eval(2.0) == Height(1));
    CHECK(HeightFunction::from_preset("two-step") == h);
    CHECK(HeightFunction::from_preset("flat:-2") == HeightFunction::flat(-2));
    CHECK(HeightFunction::from_preset("narrow-wedge:1.5") == HeightFunction::narrow_wedge(1.5));
    CHECK_THROWS_AS(HeightFunction::from_preset("wedge"), DomainError);
  }

  TEST_CASE("constructor rejects malformed data") {
    CHECK_THROWS_AS(HeightFunction(Height(0), {{1.0, Height(1)}, {1.0, Height(2)}}), DomainError);
    CHECK_THROWS_AS(HeightFunction(Height::neg_inf(), {}), DomainError);
  }

  TEST_CASE("running_max examples") {
    const auto nw = HeightFunction::narrow_wedge(0.0);
    CHECK(nw.running_max(1.0, 0.5) == Height(0));
    CHECK(nw.running_max(1.0, 2.0).is_neg_inf());
    CHECK(HeightFunction::flat().running_max(2.3, -7.1) == Height(0));
    const auto two = HeightFunction::two_step();
    CHECK(two.running_max(0.5, -0.5) == Height(2));
    CHECK(two.running_max(0.4, -0.5) == Height(0));
    CHECK(two.running_max(0.1, 1.7) == Height(1));
  }

  TEST_CASE("structural transforms") {
    CHECK(HeightFunction::narrow_wedge(0.0).shift(2.0) == HeightFunction::narrow_wedge(2.0));
    const auto two = HeightFunction::two_step();
    CHECK(two.reflect().reflect() == two);
    CHECK(two.shift(1.25).shift(-1.25) == two);
    const auto neg = HeightFunction::flat().negate();
    CHECK(neg.semicontinuity() == Semicontinuity::Lower);
    CHECK(neg.eval(0.4) == Height(0));
    CHECK(neg.negate() == HeightFunction::flat());
    // Reflection maps h(x) to h(-x), shift moves the graph right.
    for (double x : {-1.0, -0.25, 0.0, 0.7, 1.5, 3.0}) {
      CHECK(two.reflect().eval(-x) == two.eval(x));
      CHECK(two.shift(0.6).eval(x + 0.6) == two.eval(x));
    }
  }

  TEST_CASE("eval matches a one-sided-limit oracle on random profiles") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = random_profile(rng);
      std::vector<double> probes{0.37};
      for (const auto& p : h.pieces()) probes.push_back(p.at);
      for (int k = 0; k < 5; ++k) probes.push_back(pos(rng));
      for (double x : probes) CHECK(h.eval(x) == uc_oracle(h, x));
    }
  }

  TEST_CASE("raising piece values never lowers eval") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = random_profile(rng);
      auto pieces = h.pieces();
      if (pieces.empty()) continue;
      pieces[rng() % pieces.size()].value = pieces[rng() % pieces.size()].value + 1;
      // Keep the raise pointwise by comparing against the max of both.
      std::vector<Breakpoint> raised;
      for (std::size_t k = 0; k < pieces.size(); ++k)
        raised.push_back({pieces[k].at, std::max(pieces[k].value, h.pieces()[k].value)});
      const HeightFunction g(h.left_value(), raised, h.spikes());
      for (int k = 0; k < 20; ++k) {
        const double x = pos(rng);
        CHECK(g.eval(x) >= h.eval(x));
      }
      for (const auto& p : h.pieces()) CHECK(g.eval(p.at) >= h.eval(p.at));
    }
  }

  TEST_CASE("running_max properties") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const auto h = random_profile(rng);
      for (int k = 0; k < 10; ++k) {
        const double x = pos(rng);
        CHECK(h.running_max(0.0, x) == h.eval(x));
        Height prev = h.running_max(0.0, x);
        for (double t : {0.1, 0.3, 0.8, 1.6, 4.0}) {
          const Height cur = h.running_max(t, x);
          CHECK(cur >= prev);
          prev = cur;
        }
        // Against a dense scan of the interval plus all jump points.
        const double t = 0.45;
        Height scan = Height::neg_inf();
        for (int j = 0; j <= 400; ++j) scan = std::max(scan, h.eval(x - t + 2.0 * t * j / 400));
        for (const auto& p : h.pieces())
          if (std::fabs(p.at - x) <= t) scan = std::max(scan, h.eval(p.at));
        for (const auto& s : h.spikes())
          if (std::fabs(s.at - x) <= t) scan = std::max(scan, s.value);
        CHECK(h.running_max(t, x) == scan);
      }
    }
  }
}
