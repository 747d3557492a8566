#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "fgf/covariance.hpp"
#include "fgf/grid.hpp"

namespace fgf::testing {

// Leading eigenvalue of the 1-D Brownian midpoint Nystrom operator, from the
// power-iteration oracle in tests/oracles (N = 1024 and 2048, Richardson).
inline constexpr double kBrownianRichardsonLimit = 0.40528473456934772;
// Same oracle, single grids.
inline constexpr double kBrownianLambda1N24 = 0.40542944148783155;
inline constexpr double kBrownianLambda1N64 = 0.40530508023423495;
inline constexpr double kBrownianLambda1N512 = 0.40528505246093882;

// min(t_i, t_j) by explicit loops; independent of fgf::gram.
inline Eigen::MatrixXd brownian_gram_by_hand(const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double r = 1.0;
      for (std::size_t k = 0; k < grid.dim(); ++k) {
        r *= std::min(grid.coordinate(static_cast<std::size_t>(i), k),
                      grid.coordinate(static_cast<std::size_t>(j), k));
      }
      g(i, j) = r;
    }
  }
  return g;
}

// Gaussian fourth-moment band: Var[x_i x_j] = C_ii C_jj + C_ij^2 for centered
// Gaussian x, so the mean of M products has sd sqrt((C_ii C_jj + C_ij^2) / M).
inline double fraction_within_band(const Eigen::MatrixXd& empirical,
                                   const Eigen::MatrixXd& center,
                                   const Eigen::MatrixXd& reference, std::size_t count,
                                   double sigmas) {
  std::size_t inside = 0;
  for (Eigen::Index i = 0; i < reference.rows(); ++i) {
    for (Eigen::Index j = 0; j < reference.cols(); ++j) {
      const double var = (reference(i, i) * reference(j, j) + reference(i, j) * reference(i, j)) /
                         static_cast<double>(count);
      if (std::abs(empirical(i, j) - center(i, j)) <= sigmas * std::sqrt(var)) ++inside;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(reference.size());
}

inline double fraction_within_band(const Eigen::MatrixXd& empirical,
                                   const Eigen::MatrixXd& reference, std::size_t count,
                                   double sigmas) {
  return fraction_within_band(empirical, reference, reference, count, sigmas);
}

inline std::vector<CovarianceModel> catalog(const Grid& grid) {
  std::vector<CovarianceModel> models = {
      CovarianceModel::brownian_sheet(grid.dim()),
      CovarianceModel::fractional_brownian_sheet(std::vector<double>(grid.dim(), 0.7)),
      CovarianceModel::constant_field(grid.dim(), 1.0),
      CovarianceModel::zero_field(grid.dim()),
  };
  models.push_back(CovarianceModel::tabulated(grid, brownian_gram_by_hand(grid)));
  return models;
}

}  // namespace fgf::testing
