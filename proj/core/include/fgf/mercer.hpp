#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "fgf/covariance.hpp"
#include "fgf/grid.hpp"

namespace fgf {

inline constexpr double kDefaultClipTol = 1e-10;

/// Eigenpairs of the discretized covariance operator f -> sum_j w_j R(., t_j) f_j.
struct MercerDecomposition {
  Grid grid;
  /// Nonincreasing, all >= 0.
  Eigen::VectorXd eigenvalues;
  /// Column k holds the k-th eigenfunction at the grid nodes, normalized so
  /// that sum_i w_i phi_k(t_i)^2 = 1.
  Eigen::MatrixXd eigenfunctions;
  /// Total magnitude of negative eigenvalues set to zero.
  double clipped_mass = 0.0;
  double clip_tol = kDefaultClipTol;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  /// Number of eigenvalues above clip_tol * lambda_max.
  std::size_t numerical_rank() const;
  /// Covariance matrix implied by the stored eigenpairs, Phi Lambda Phi^T.
  Eigen::MatrixXd covariance() const;
};

/// Symmetric square root of the covariance operator sampled on the grid.
struct FredholmKernel {
  Grid grid;
  /// values(i, j) = K(t_i, t_j); exactly symmetric.
  Eigen::MatrixXd values;
};

/// Symmetrized Nystrom eigendecomposition of a covariance sampled on `grid`.
///
/// Solves D^1/2 G D^1/2 = U Lambda U^T with D = diag(weights) and returns
/// phi_k = D^-1/2 u_k. Eigenvalues in [-clip_tol * lambda_max, 0) are set to
/// zero and their magnitude accumulated in clipped_mass; anything further
/// below zero raises NotPositiveSemidefiniteError. Eigenpairs are sorted by
/// decreasing eigenvalue (ties keep solver order) and each eigenvector is
/// signed so that its first largest-magnitude component is positive.
MercerDecomposition decompose(const Eigen::MatrixXd& gram_matrix, const Grid& grid,
                              double clip_tol = kDefaultClipTol);

MercerDecomposition decompose(const CovarianceModel& model, const Grid& grid,
                              double clip_tol = kDefaultClipTol,
                              std::size_t node_budget = kDefaultNodeBudget);

/// K = sum_k sqrt(lambda_k) phi_k phi_k^T over the leading `truncation`
/// eigenpairs (all by default). Modes with lambda_k <= clip_tol * lambda_max
/// are treated as null space and skipped.
FredholmKernel square_root_kernel(const MercerDecomposition& decomp,
                                  std::optional<std::size_t> truncation = std::nullopt);

/// R(i, j) = sum_m K(i, m) w_m K(j, m).
Eigen::MatrixXd reconstruct_covariance(const FredholmKernel& kernel);

/// sum_m A(i, m) w_m A(j, m) for an arbitrary node-by-node kernel matrix.
Eigen::MatrixXd weighted_outer(const Eigen::MatrixXd& kernel, const Grid& grid);

/// ||a - b||_F / ||b||_F, or ||a - b||_F when b vanishes.
double relative_frobenius_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace fgf
