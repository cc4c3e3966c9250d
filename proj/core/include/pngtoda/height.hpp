#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace png {

// Integer height extended by -inf (and +inf, which only appears after negation).
class Height {
 public:
  using rep = std::int64_t;

  constexpr Height() = default;
  constexpr Height(rep v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Height neg_inf() { return Height(kNegInf); }
  static constexpr Height pos_inf() { return Height(kPosInf); }

  constexpr bool finite() const { return v_ != kNegInf && v_ != kPosInf; }
  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  constexpr bool is_pos_inf() const { return v_ == kPosInf; }
  constexpr rep value() const { return v_; }

  constexpr auto operator<=>(const Height&) const = default;

  // Infinite values absorb finite offsets.
  constexpr Height operator+(rep d) const { return finite() ? Height(v_ + d) : *this; }
  constexpr Height operator-(rep d) const { return finite() ? Height(v_ - d) : *this; }
  constexpr Height operator-() const {
    if (v_ == kNegInf) return pos_inf();
    if (v_ == kPosInf) return neg_inf();
    return Height(-v_);
  }

  std::string str() const;

 private:
  static constexpr rep kNegInf = std::numeric_limits<rep>::min();
  static constexpr rep kPosInf = std::numeric_limits<rep>::max();
  rep v_ = 0;
};

enum class Semicontinuity { Upper, Lower };

// The function takes `value` on [at, next breakpoint).
struct Breakpoint {
  double at;
  Height value;
  bool operator==(const Breakpoint&) const = default;
};

// Isolated point value, dominating its neighbourhood in the upper case.
struct Spike {
  double at;
  Height value;
  bool operator==(const Spike&) const = default;
};

// Piecewise-constant integer-valued function on R with finitely many jumps and
// spikes. The default (upper semicontinuous) flavour is the PNG initial datum;
// point evaluation at a jump returns the larger one-sided limit.
class HeightFunction {
 public:
  HeightFunction(Height left_value, std::vector<Breakpoint> pieces,
                 std::vector<Spike> spikes = {},
                 Semicontinuity sc = Semicontinuity::Upper);

  static HeightFunction flat(Height::rep level = 0);
  static HeightFunction narrow_wedge(double y, Height::rep level = 0);
  // 0 on (-inf,0), 2 on [0,1.5), 1 on [1.5,inf).
  static HeightFunction two_step();
  // "flat", "flat:<level>", "narrow-wedge:<y>", "two-step".
  static HeightFunction from_preset(const std::string& name);

  Height eval(double x) const;
  // Supremum over the closed interval [lo, hi]. Upper semicontinuous only.
  Height sup_over(double lo, double hi) const;
  // sup_{|y-x|<=t} h(y): the smallest admissible height at (t, x).
  Height running_max(double t, double x) const { return sup_over(x - t, x + t); }

  // x -> h(-x)
  HeightFunction reflect() const;
  // x -> h(x - y), i.e. the graph moved right by y.
  HeightFunction shift(double y) const;
  // x -> -h(x); flips the semicontinuity flag.
  HeightFunction negate() const;

  Height left_value() const { return left_; }
  Height right_value() const { return pieces_.empty() ? left_ : pieces_.back().value; }
  const std::vector<Breakpoint>& pieces() const { return pieces_; }
  const std::vector<Spike>& spikes() const { return spikes_; }
  Semicontinuity semicontinuity() const { return sc_; }

  // Value on the open piece containing x, ignoring point values.
  Height piece_value(double x) const;
  // Closed hull of {x : h(x) finite}; endpoints may be +-infinity.
  std::pair<double, double> finite_support() const;
  Height max_finite_value() const;
  Height min_finite_value() const;

  std::string describe() const;

  bool operator==(const HeightFunction&) const = default;

 private:
  Height left_;
  std::vector<Breakpoint> pieces_;
  std::vector<Spike> spikes_;
  Semicontinuity sc_;
};

}  // namespace png
