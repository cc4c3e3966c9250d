#include <algorithm>
#include <cmath>
#include <list>
#include <queue>

#include "pngtoda/errors.hpp"
#include "pngtoda/simulate.hpp"

namespace png {

namespace {

// A unit-free step of the profile moving at speed 1: up steps (vel -1) travel
// left, down steps (vel +1) travel right. Position at time s is c + vel * s.
struct Step {
  double c;
  int vel;
  Height right;  // value to the right of the step
  long id;
};

using StepList = std::list<Step>;
using StepIt = StepList::iterator;

struct Collision {
  double time;
  StepIt left;
  StepIt right;
  long left_id;
  long right_id;
  bool operator>(const Collision& o) const { return time > o.time; }
};

class Profile {
 public:
  explicit Profile(const HeightFunction& h) : left_(h.left_value()) {
    Height prev = h.left_value();
    const auto& pieces = h.pieces();
    const auto& spikes = h.spikes();
    std::size_t i = 0, j = 0;
    while (i < pieces.size() || j < spikes.size()) {
      const bool take_spike =
          j < spikes.size() && (i == pieces.size() || spikes[j].at <= pieces[i].at);
      if (take_spike) {
        const double p = spikes[j].at;
        Height after = prev;
        if (i < pieces.size() && pieces[i].at == p) after = pieces[i++].value;
        push(p, -1, spikes[j].value);
        push(p, +1, after);
        prev = after;
        ++j;
      } else {
        const Height v = pieces[i].value;
        push(pieces[i].at, v > prev ? -1 : +1, v);
        prev = v;
        ++i;
      }
    }
    for (auto it = steps_.begin(); it != steps_.end(); ++it) schedule(it);
  }

  void advance(double until) {
    while (!queue_.empty() && queue_.top().time <= until) {
      const Collision c = queue_.top();
      queue_.pop();
      if (!alive(c.left_id) || !alive(c.right_id) || std::next(c.left) != c.right) continue;
      merge(c.left, c.right);
    }
  }

  void nucleate(double s, double y) {
    auto it = steps_.begin();
    Height v = left_;
    while (it != steps_.end() && it->c + it->vel * s <= y) {
      v = it->right;
      ++it;
    }
    if (v.is_neg_inf()) return;
    auto up = steps_.insert(it, make(y + s, -1, v + 1));
    auto down = steps_.insert(it, make(y - s, +1, v));
    if (up != steps_.begin()) schedule(std::prev(up));
    schedule(down);
  }

  HeightFunction snapshot(double s) const {
    std::vector<Breakpoint> pieces;
    std::vector<Spike> spikes;
    Height prev = left_;
    for (auto it = steps_.begin(); it != steps_.end();) {
      const double p = it->c + it->vel * s;
      // Steps sharing a position are zero-width plateaus; keep their maximum.
      Height top = Height::neg_inf();
      Height last = prev;
      for (; it != steps_.end() && it->c + it->vel * s == p; ++it) {
        top = std::max(top, last);
        last = it->right;
      }
      top = std::max(top, last);
      if (top > std::max(prev, last)) spikes.push_back({p, top});
      if (last != prev) pieces.push_back({p, last});
      prev = last;
    }
    return HeightFunction(left_, std::move(pieces), std::move(spikes));
  }

 private:
  Step make(double c, int vel, Height right) {
    alive_.push_back(true);
    return Step{c, vel, right, next_id_++};
  }

  void push(double pos, int vel, Height right) { steps_.push_back(make(pos, vel, right)); }

  bool alive(long id) const { return alive_[static_cast<std::size_t>(id)]; }

  void kill(StepIt it) {
    alive_[static_cast<std::size_t>(it->id)] = false;
    steps_.erase(it);
  }

  // Queue a collision if `it` is a down step followed by an up step.
  void schedule(StepIt it) {
    if (it == steps_.end()) return;
    auto nx = std::next(it);
    if (nx == steps_.end() || it->vel != +1 || nx->vel != -1) return;
    queue_.push({0.5 * (nx->c - it->c), it, nx, it->id, nx->id});
  }

  void merge(StepIt down, StepIt up) {
    const Height l = down == steps_.begin() ? left_ : std::prev(down)->right;
    const Height r = up->right;
    if (l > r) {
      // The down step keeps its trajectory and now drops straight to r.
      down->right = r;
      kill(up);
      schedule(down);
    } else if (l < r) {
      kill(down);
      if (up != steps_.begin()) schedule(std::prev(up));
    } else {
      const bool at_front = down == steps_.begin();
      auto before = at_front ? steps_.end() : std::prev(down);
      kill(down);
      kill(up);
      if (!at_front) schedule(before);
    }
  }

  Height left_;
  StepList steps_;
  std::vector<bool> alive_;
  long next_id_ = 0;
  std::priority_queue<Collision, std::vector<Collision>, std::greater<>> queue_;
};

}  // namespace

HeightFunction evolve_event_driven(const HeightFunction& h, double t, const PoissonField& field) {
  if (h.semicontinuity() != Semicontinuity::Upper)
    throw DomainError("PNG evolves upper semicontinuous data");
  if (!(t >= 0) || t > field.t) throw DomainError("evolution time outside the field");
  Profile prof(h);
  for (const auto& p : field.points) {
    if (p.time > t) break;
    prof.advance(p.time);
    prof.nucleate(p.time, p.pos);
  }
  prof.advance(t);
  return prof.snapshot(t);
}

std::vector<Height> sample_event_driven(const HeightFunction& h, double t,
                                        const std::vector<double>& xs, const PoissonField& field) {
  if (!field.covers(t, xs)) throw DomainError("Poisson field does not cover the light cones");
  const HeightFunction profile = evolve_event_driven(h, t, field);
  std::vector<Height> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(profile.eval(x));
  return out;
}

}  // namespace png
