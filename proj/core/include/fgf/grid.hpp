#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace fgf {

/// Midpoint tensor grid on [0,1]^n with N points per axis.
///
/// Node (i_1, ..., i_n) sits at ((i_1 + 1/2)/N, ..., (i_n + 1/2)/N) and carries
/// weight N^-n. Nodes are flattened row-major with the last axis varying
/// fastest; every matrix indexed by grid nodes uses this order.
class Grid {
 public:
  Grid(std::size_t dim, std::size_t points_per_axis);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t points_per_axis() const noexcept { return points_; }
  /// Total node count N^n.
  std::size_t size() const noexcept { return size_; }

  /// Coordinate of node `flat` along `axis`.
  double coordinate(std::size_t flat, std::size_t axis) const;
  std::vector<double> node(std::size_t flat) const;
  /// size() x dim() matrix of node coordinates.
  const Eigen::MatrixXd& nodes() const noexcept { return nodes_; }

  double weight() const noexcept { return weight_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  std::size_t flat_index(std::span<const std::size_t> multi) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  /// True when u <= s componentwise at the given flat indices.
  bool precedes(std::size_t u, std::size_t s) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.points_ == b.points_;
  }

 private:
  std::size_t dim_;
  std::size_t points_;
  std::size_t size_;
  double weight_;
  Eigen::MatrixXd nodes_;
  Eigen::VectorXd weights_;
};

Grid build_grid(std::size_t dim, std::size_t points_per_axis);

/// Weighted sum sum_i w_i f(t_i).
double integrate(const Grid& grid, const Eigen::VectorXd& values);

/// Weighted L2 norm sqrt(sum_i w_i f_i^2).
double weighted_norm(const Grid& grid, const Eigen::VectorXd& values);

}  // namespace fgf
