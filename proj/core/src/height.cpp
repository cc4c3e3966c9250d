#include "pngtoda/height.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pngtoda/errors.hpp"

namespace png {

std::string Height::str() const {
  if (is_neg_inf()) return "-inf";
  if (is_pos_inf()) return "inf";
  return std::to_string(v_);
}

namespace {

Height join(Semicontinuity sc, Height a, Height b) {
  return sc == Semicontinuity::Upper ? std::max(a, b) : std::min(a, b);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw DomainError(what);
    return v;
  } catch (const std::logic_error&) {
    throw DomainError("cannot parse number in " + what);
  }
}

}  // namespace

HeightFunction::HeightFunction(Height left_value, std::vector<Breakpoint> pieces,
                               std::vector<Spike> spikes, Semicontinuity sc)
    : left_(left_value), sc_(sc) {
  const Height forbidden = sc == Semicontinuity::Upper ? Height::pos_inf() : Height::neg_inf();
  auto check_value = [&](Height v) {
    if (v == forbidden) throw DomainError("height function takes a forbidden infinite value");
  };
  check_value(left_value);

  std::sort(pieces.begin(), pieces.end(),
            [](const Breakpoint& a, const Breakpoint& b) { return a.at < b.at; });
  Height prev = left_;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    if (!std::isfinite(pieces[k].at)) throw DomainError("breakpoint position must be finite");
    if (k > 0 && pieces[k].at == pieces[k - 1].at)
      throw DomainError("breakpoints must be strictly increasing");
    check_value(pieces[k].value);
    if (pieces[k].value != prev) pieces_.push_back(pieces[k]);
    prev = pieces[k].value;
  }

  std::sort(spikes.begin(), spikes.end(),
            [](const Spike& a, const Spike& b) { return a.at < b.at; });
  std::vector<Spike> merged;
  for (const Spike& s : spikes) {
    if (!std::isfinite(s.at)) throw DomainError("spike position must be finite");
    check_value(s.value);
    if (!merged.empty() && merged.back().at == s.at)
      merged.back().value = join(sc_, merged.back().value, s.value);
    else
      merged.push_back(s);
  }
  for (const Spike& s : merged) {
    // A spike matters only if it beats both one-sided limits.
    auto it = std::lower_bound(pieces_.begin(), pieces_.end(), s.at,
                               [](const Breakpoint& b, double x) { return b.at < x; });
    Height right = piece_value(s.at);
    Height left = right;
    if (it != pieces_.end() && it->at == s.at)
      left = it == pieces_.begin() ? left_ : std::prev(it)->value;
    Height base = join(sc_, left, right);
    if (join(sc_, base, s.value) != base) spikes_.push_back(s);
  }

  bool any_finite = left_.finite();
  for (const auto& p : pieces_) any_finite = any_finite || p.value.finite();
  for (const auto& s : spikes_) any_finite = any_finite || s.value.finite();
  if (!any_finite) throw DomainError("height function has no finite value");
}

HeightFunction HeightFunction::flat(Height::rep level) { return HeightFunction(level, {}); }

HeightFunction HeightFunction::narrow_wedge(double y, Height::rep level) {
  return HeightFunction(Height::neg_inf(), {}, {{y, level}});
}

HeightFunction HeightFunction::two_step() {
  return HeightFunction(0, {{0.0, 2}, {1.5, 1}});
}

HeightFunction HeightFunction::from_preset(const std::string& name) {
  auto colon = name.find(':');
  std::string head = name.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "flat") {
    if (arg.empty()) return flat(0);
    Height::rep level = 0;
    auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), level);
    if (ec != std::errc() || p != arg.data() + arg.size())
      throw DomainError("bad level in preset '" + name + "'");
    return flat(level);
  }
  if (head == "narrow-wedge") return narrow_wedge(arg.empty() ? 0.0 : parse_double(arg, name));
  if (head == "two-step" && arg.empty()) return two_step();
  throw DomainError("unknown preset '" + name + "'");
}

Height HeightFunction::piece_value(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Breakpoint& b) { return v < b.at; });
  return it == pieces_.begin() ? left_ : std::prev(it)->value;
}

Height HeightFunction::eval(double x) const {
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Breakpoint& b, double v) { return b.at < v; });
  Height v = piece_value(x);
  if (it != pieces_.end() && it->at == x)
    v = join(sc_, v, it == pieces_.begin() ? left_ : std::prev(it)->value);
  auto sp = std::lower_bound(spikes_.begin(), spikes_.end(), x,
                             [](const Spike& s, double v) { return s.at < v; });
  if (sp != spikes_.end() && sp->at == x) v = join(sc_, v, sp->value);
  return v;
}

Height HeightFunction::sup_over(double lo, double hi) const {
  if (sc_ != Semicontinuity::Upper) throw DomainError("sup_over needs an upper semicontinuous function");
  if (!(lo <= hi)) throw DomainError("sup_over needs lo <= hi");
  Height v = eval(lo);
  for (const auto& p : pieces_)
    if (p.at > lo && p.at <= hi) v = std::max(v, p.value);
  for (const auto& s : spikes_)
    if (s.at > lo && s.at <= hi) v = std::max(v, s.value);
  return v;
}

HeightFunction HeightFunction::reflect() const {
  std::vector<Breakpoint> out;
  out.reserve(pieces_.size());
  for (std::size_t k = pieces_.size(); k-- > 0;)
    out.push_back({-pieces_[k].at, k == 0 ? left_ : pieces_[k - 1].value});
  std::vector<Spike> sp;
  for (const auto& s : spikes_) sp.push_back({-s.at, s.value});
  return HeightFunction(right_value(), std::move(out), std::move(sp), sc_);
}

HeightFunction HeightFunction::shift(double y) const {
  auto out = pieces_;
  for (auto& p : out) p.at += y;
  auto sp = spikes_;
  for (auto& s : sp) s.at += y;
  return HeightFunction(left_, std::move(out), std::move(sp), sc_);
}

HeightFunction HeightFunction::negate() const {
  auto out = pieces_;
  for (auto& p : out) p.value = -p.value;
  auto sp = spikes_;
  for (auto& s : sp) s.value = -s.value;
  return HeightFunction(-left_, std::move(out), std::move(sp),
                        sc_ == Semicontinuity::Upper ? Semicontinuity::Lower : Semicontinuity::Upper);
}

std::pair<double, double> HeightFunction::finite_support() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = inf, hi = -inf;
  if (left_.finite()) lo = -inf;
  if (right_value().finite()) hi = inf;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    Height before = k == 0 ? left_ : pieces_[k - 1].value;
    if (pieces_[k].value.finite() || before.finite()) {
      lo = std::min(lo, pieces_[k].at);
      hi = std::max(hi, pieces_[k].at);
    }
  }
  for (const auto& s : spikes_) {
    if (s.value.finite()) {
      lo = std::min(lo, s.at);
      hi = std::max(hi, s.at);
    }
  }
  return {lo, hi};
}

Height HeightFunction::max_finite_value() const {
  Height v = Height::neg_inf();
  auto take = [&](Height h) {
    if (h.finite() && (v.is_neg_inf() || h > v)) v = h;
  };
  take(left_);
  for (const auto& p : pieces_) take(p.value);
  for (const auto& s : spikes_) take(s.value);
  return v;
}

Height HeightFunction::min_finite_value() const {
  Height v = Height::pos_inf();
  auto take = [&](Height h) {
    if (h.finite() && h < v) v = h;
  };
  take(left_);
  for (const auto& p : pieces_) take(p.value);
  for (const auto& s : spikes_) take(s.value);
  return v;
}

std::string HeightFunction::describe() const {
  std::ostringstream os;
  os << (sc_ == Semicontinuity::Upper ? "UC" : "LC") << "{left=" << left_.str();
  for (const auto& p : pieces_) os << "; [" << p.at << ")=" << p.value.str();
  for (const auto& s : spikes_) os << "; spike@" << s.at << "=" << s.value.str();
  os << "}";
  return os.str();
}

}  // namespace png
