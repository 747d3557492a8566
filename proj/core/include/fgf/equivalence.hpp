#pragma once

#include <Eigen/Core>

#include "fgf/grid.hpp"
#include "fgf/mercer.hpp"

namespace fgf {

/// Perturbation kernel L(s, u) on grid nodes, supported on u <= s componentwise.
struct VolterraKernel {
  Grid grid;
  /// values(i, j) = L(s_i, u_j).
  Eigen::MatrixXd values;
};

struct VolterraProjection {
  VolterraKernel kernel;
  /// Weighted L2 mass sum w_i w_j raw(i, j)^2 of the removed entries.
  double zeroed_mass = 0.0;
};

/// Keeps raw(i, j) where node j precedes node i componentwise, zeroes the rest.
VolterraProjection volterra_project(const Eigen::MatrixXd& raw, const Grid& grid);

/// scale on the Volterra support.
VolterraKernel constant_volterra(const Grid& grid, double scale);

/// scale * exp(-|s - u|^2 / (2 width^2)) on the Volterra support.
VolterraKernel gaussian_bump_volterra(const Grid& grid, double scale, double width);

/// Kernel-level transform K~(t_i, s_j) = K(t_i, s_j) - sum_m w_m K(t_i, u_m) L(u_m, s_j),
/// the sum running over nodes u_m >= s_j (the support of L(., s_j)).
Eigen::MatrixXd transform_kernel(const FredholmKernel& kernel, const VolterraKernel& volterra);

/// Discrete Hitsuda map on white-noise cell increments (one realization per row):
/// cell j of the output is dW_j - w_j sum_{u_m <= s_j} L(s_j, u_m) dW_m.
Eigen::MatrixXd transform_noise(const VolterraKernel& volterra,
                                const Eigen::MatrixXd& increments, const Grid& grid);

/// Covariance sum_m K~(i, m) w_m K~(j, m) of the field driven by K~.
Eigen::MatrixXd equivalent_covariance(const Eigen::MatrixXd& transformed, const Grid& grid);

}  // namespace fgf
