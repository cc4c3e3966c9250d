#pragma once

#include <vector>

#include "pngtoda/height.hpp"
#include "pngtoda/walk_ops.hpp"

namespace png {

struct KernelOptions {
  long block_size = 60;  // M: indices u = 1..M in every block
  long buffer = 40;      // extra levels around the window for path confinement
};

// K^ext(x_i, U; x_j, V) for U in rows, V in cols: minus the heat kernel
// between the two points (when x_i < x_j) plus the triangularly conjugated
// hitting kernel over [x_i - t, x_j + t].
Eigen::MatrixXd extended_block(const HeightFunction& h, double t, double xi, double xj,
                               Window rows, Window cols, long buffer = 40);
IntegerKernel extended_block(const HeightFunction& h, double t, double xi, double xj, Window w,
                             long buffer = 40);

// n x n block operator (K_r)_{ij}(u, v) = K^ext(x_i, u + r_i; x_j, v + r_j),
// u, v = 1..M, stored densely.
struct BlockKernel {
  std::vector<double> xs;
  std::vector<long> rs;
  long block_size = 0;
  Eigen::MatrixXd matrix;

  long blocks() const { return static_cast<long>(xs.size()); }
  auto block(long i, long j) const {
    return matrix.block(i * block_size, j * block_size, block_size, block_size);
  }
};

BlockKernel matrix_kernel(const HeightFunction& h, double t, const std::vector<double>& xs,
                          const std::vector<long>& rs, const KernelOptions& opts = {});

// Diagonal conjugation K_{ij}(u,v) * th_i(u) / th_j(v), th_i(u) = (1+u^2)^i with
// blocks numbered from 1. Weights are formed in log space.
// power = -1 undoes it. The Fredholm determinant is unchanged.
BlockKernel theta_conjugate(const BlockKernel& k, int power = 1);

// Checks x strictly increasing and throws DomainError otherwise.
void check_points(const std::vector<double>& xs, const std::vector<long>& rs);

}  // namespace png
