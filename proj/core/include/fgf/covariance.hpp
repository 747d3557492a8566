#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fgf/grid.hpp"

namespace fgf {

enum class ModelKind {
  brownian_sheet,
  fractional_brownian_sheet,
  constant_field,
  zero_field,
  tabulated,
};

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Default cap on N^n for dense node-by-node matrices (8 * 4096^2 bytes = 128 MiB).
inline constexpr std::size_t kDefaultNodeBudget = 4096;

/// Covariance R(t, s) of a centered Gaussian field on [0,1]^n.
///
/// Immutable value type. Tabulated models carry a matrix on a fixed grid and
/// extend it piecewise-constantly to arbitrary points (each point maps to the
/// grid cell containing it).
class CovarianceModel {
 public:
  static CovarianceModel brownian_sheet(std::size_t dim);
  /// One Hurst index per axis, each in (0, 1).
  static CovarianceModel fractional_brownian_sheet(std::vector<double> hurst);
  static CovarianceModel constant_field(std::size_t dim, double variance);
  static CovarianceModel zero_field(std::size_t dim);
  /// The matrix is not checked for positive semidefiniteness here.
  static CovarianceModel tabulated(Grid grid, Eigen::MatrixXd values);

  ModelKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<double>& hurst() const noexcept { return hurst_; }
  double variance() const noexcept { return variance_; }
  const std::optional<Grid>& table_grid() const noexcept { return table_grid_; }
  const Eigen::MatrixXd& table() const noexcept { return table_; }

  /// Human-readable description, e.g. "fractional_brownian_sheet(H=0.7,0.7)".
  std::string describe() const;

  double evaluate(std::span<const double> t, std::span<const double> s) const;

 private:
  CovarianceModel(ModelKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}

  double evaluate_unchecked(std::span<const double> t, std::span<const double> s) const;
  std::size_t table_cell(std::span<const double> t) const;

  ModelKind kind_;
  std::size_t dim_;
  std::vector<double> hurst_;
  double variance_ = 0.0;
  std::optional<Grid> table_grid_;
  Eigen::MatrixXd table_;

  friend Eigen::MatrixXd gram(const CovarianceModel&, const Grid&, std::size_t);
};

double evaluate(const CovarianceModel& model, std::span<const double> t,
                std::span<const double> s);

struct TraceResult {
  double value = 0.0;
  /// Admissibility: the quadrature of R(t, t) is finite.
  bool finite = true;
};

/// Quadrature of the variance function, sum_i w_i R(t_i, t_i).
TraceResult trace(const CovarianceModel& model, const Grid& grid);

/// Gram matrix G(i, j) = R(t_i, t_j), symmetrized as (G + G^T) / 2.
Eigen::MatrixXd gram(const CovarianceModel& model, const Grid& grid,
                     std::size_t node_budget = kDefaultNodeBudget);

/// Weighted Hilbert-Schmidt norm sqrt(sum_ij w_i w_j G(i, j)^2) of the
/// discretized covariance operator.
double hilbert_schmidt_norm(const Eigen::MatrixXd& gram_matrix, const Grid& grid);

}  // namespace fgf
