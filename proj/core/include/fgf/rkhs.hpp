#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "fgf/mercer.hpp"

namespace fgf {

inline constexpr double kDefaultMembershipTol = 1e-8;

/// A grid function tested for membership in the image of the kernel operator.
struct RkhsElement {
  Grid grid;
  Eigen::VectorXd values;
  /// Minimum weighted-norm solution of values = sum_j w_j K(., t_j) preimage_j.
  Eigen::VectorXd preimage;
  /// Weighted L2 norm of values - K preimage, relative to that of values.
  double residual = 0.0;
  bool accepted = false;
  /// Identifies the space the element was projected in.
  std::uint64_t space_id = 0;
};

/// Numerical RKHS of the field with Fredholm kernel K: the image of
/// f~ -> sum_j w_j K(., t_j) f~_j, normed by the smallest preimage.
///
/// Decomposes D^1/2 K D^1/2 once; modes with |sigma_k| <= sqrt(clip_tol) *
/// sigma_max are treated as null space, matching the lambda_k <= clip_tol *
/// lambda_max rule of the square-root kernel.
class RkhsSpace {
 public:
  explicit RkhsSpace(const FredholmKernel& kernel, double clip_tol = kDefaultClipTol);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(modes_.cols()); }
  std::uint64_t id() const noexcept { return id_; }

  /// Never throws on non-membership; inspect `accepted`.
  RkhsElement project(const Eigen::VectorXd& f, double tol = kDefaultMembershipTol) const;

  /// sum_j w_j K(t_i, t_j) g_j.
  Eigen::VectorXd apply(const Eigen::VectorXd& g) const;

 private:
  Grid grid_;
  Eigen::MatrixXd kernel_;
  Eigen::MatrixXd modes_;       ///< retained eigenvectors of D^1/2 K D^1/2
  Eigen::VectorXd singular_;    ///< matching eigenvalues
  std::uint64_t id_;
};

RkhsElement project_membership(const RkhsSpace& space, const Eigen::VectorXd& f,
                               double tol = kDefaultMembershipTol);

/// <f, g>_H = sum_j w_j f~_j g~_j over minimum-norm preimages.
double rkhs_inner(const RkhsSpace& space, const RkhsElement& f, const RkhsElement& g);

double rkhs_norm(const RkhsSpace& space, const RkhsElement& f);

}  // namespace fgf
