#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pngtoda/height.hpp"
#include "pngtoda/walk_ops.hpp"

namespace png {

// One step of the barrier seen by a walk run from a to b: either an open
// stretch of given length below a constant level, or a single time at which
// the walk is compared with a point value.
struct BarrierOp {
  enum class Kind { Segment, Point };
  Kind kind;
  double at;      // start time of the op
  double length;  // zero for points
  Height level;
};

// Point at a, constant open stretches and interior spikes, point at b.
std::vector<BarrierOp> barrier_ops(const HeightFunction& h, double a, double b);

// Walk of duration s killed on reaching {<= level}: reflection formula.
IntegerKernel nohit_constant(Height level, double s, Window w);
// Same quantity by uniformisation of the killed generator on the window.
IntegerKernel nohit_constant_uniformized(Height level, double s, Window w, double tol = 1e-16);

// Transition kernels over [a, b] of walks that do / do not meet hypo(h).
// Paths are confined to the window; hit is zero when a > b.
IntegerKernel hit(const HeightFunction& h, double a, double b, Window w);
IntegerKernel nohit(const HeightFunction& h, double a, double b, Window w);

// Rows and cols are sub-windows of the inner window that confines the paths.
Eigen::MatrixXd hit_block(const HeightFunction& h, double a, double b, Window inner, Window rows,
                          Window cols);
Eigen::MatrixXd nohit_block(const HeightFunction& h, double a, double b, Window inner,
                            Window rows, Window cols);

struct McEstimate {
  double estimate;
  double stderr_;
  long samples;
};

// Direct simulation of the rate-2 walk started at u. Estimates
// P(event, N(b) = v), or P(event) when v is empty, where event is "meets
// hypo(h)" (hit_event) or its complement.
McEstimate mc_walk_oracle(const HeightFunction& h, double a, double b, long u,
                          std::optional<long> v, long samples, std::uint64_t seed,
                          bool hit_event = true);

}  // namespace png
