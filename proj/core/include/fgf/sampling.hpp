#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "fgf/covariance.hpp"
#include "fgf/grid.hpp"
#include "fgf/mercer.hpp"

namespace fgf {

enum class BasisKind { discrete_delta, haar, trigonometric };

std::string to_string(BasisKind kind);
BasisKind parse_basis_kind(const std::string& name);

/// Orthonormal functions in the weighted grid inner product, one per column.
struct Basis {
  BasisKind kind;
  Grid grid;
  Eigen::MatrixXd values;

  std::size_t count() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Builds the first `count` functions (all N^n by default) of a tensor basis.
///
/// discrete_delta: column j is sqrt(N^n) at node j, zero elsewhere.
/// haar: tensor products of 1-D Haar wavelets; needs N a power of two.
/// trigonometric: tensor products of 1, sqrt(2) cos(k pi t).
/// Tensor functions are ordered by total 1-D index, then lexicographically,
/// so the constant function comes first.
Basis make_basis(BasisKind kind, const Grid& grid,
                 std::optional<std::size_t> count = std::nullopt);

/// c_k(t_i) = sum_j w_j phi_k(t_j) K(t_i, t_j).
Eigen::VectorXd coefficient_field(const FredholmKernel& kernel, const Basis& basis,
                                  std::size_t k);

/// Columns c_0, ..., c_{truncation-1}.
Eigen::MatrixXd coefficient_matrix(const FredholmKernel& kernel, const Basis& basis,
                                   std::optional<std::size_t> truncation = std::nullopt);

/// sum_k c_k(t_i) c_k(t_j); equals the field covariance for a complete basis.
Eigen::MatrixXd coefficient_gram(const Eigen::MatrixXd& coefficients);

/// Entry K of the result is sum_i w_i (C(t_i, t_i) - sum_{k<K} c_k(t_i)^2),
/// with C the covariance reconstructed from the kernel, for K = 0..count.
Eigen::VectorXd truncation_error_curve(const FredholmKernel& kernel, const Basis& basis);

struct SampleMeta {
  std::string generator;  ///< "series" or "factor"
  std::string basis;      ///< basis kind, or "spectral" for the factor sampler
  std::size_t truncation = 0;
  std::uint64_t seed = 0;
};

/// M realizations on the grid, one per row of `data` in canonical node order.
struct FieldSamples {
  Grid grid;
  Eigen::MatrixXd data;
  SampleMeta meta;

  std::size_t count() const noexcept { return static_cast<std::size_t>(data.rows()); }
};

/// Realization m is sum_{k < truncation} c_k xi_{m,k} with xi_{m,k} variate k
/// of NormalStream(seed, m).
FieldSamples sample_series(const FredholmKernel& kernel, const Basis& basis,
                           std::size_t truncation, std::size_t count, std::uint64_t seed);

/// Seed offset separating the factor sampler's streams from the series sampler's.
inline constexpr std::uint64_t kFactorSeedOffset = 0x9E3779B97F4A7C15ull;

/// Reference sampler: x_m = Phi Lambda^1/2 xi_m from the spectral factor of the
/// (clipped) Gram matrix, with xi_m drawn from NormalStream(seed + offset, m).
FieldSamples sample_factor(const CovarianceModel& model, const Grid& grid,
                           std::size_t count, std::uint64_t seed,
                           double clip_tol = kDefaultClipTol);

/// Non-centered estimator (1/M) X^T X.
Eigen::MatrixXd empirical_covariance(const FieldSamples& samples);

/// Per-entry standard deviation of the empirical covariance of M Gaussian
/// draws: sqrt((C_ii C_jj + C_ij^2) / M).
Eigen::MatrixXd monte_carlo_sigma(const Eigen::MatrixXd& reference, std::size_t count);

/// Fraction of entries with |empirical - reference| <= sigmas * sigma_ij.
double band_coverage(const Eigen::MatrixXd& empirical, const Eigen::MatrixXd& reference,
                     std::size_t count, double sigmas = 3.0);

}  // namespace fgf
