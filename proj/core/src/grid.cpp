#include "fgf/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fgf/errors.hpp"

namespace fgf {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t result = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (result > std::numeric_limits<std::size_t>::max() / base) {
      throw ResourceError("grid size " + std::to_string(base) + "^" +
                          std::to_string(exp) + " overflows");
    }
    result *= base;
  }
  return result;
}

}  // namespace

Grid::Grid(std::size_t dim, std::size_t points_per_axis)
    : dim_(dim), points_(points_per_axis) {
  if (dim == 0) throw DomainError("grid dimension must be at least 1");
  if (points_per_axis == 0) throw DomainError("grid needs at least 1 point per axis");
  size_ = checked_power(points_, dim_);
  weight_ = std::pow(static_cast<double>(points_), -static_cast<double>(dim_));
  weights_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size_), weight_);

  nodes_.resize(static_cast<Eigen::Index>(size_), static_cast<Eigen::Index>(dim_));
  for (std::size_t flat = 0; flat < size_; ++flat) {
    std::size_t rest = flat;
    for (std::size_t axis = dim_; axis-- > 0;) {
      const std::size_t i = rest % points_;
      rest /= points_;
      nodes_(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(axis)) =
          (static_cast<double>(i) + 0.5) / static_cast<double>(points_);
    }
  }
}

double Grid::coordinate(std::size_t flat, std::size_t axis) const {
  if (flat >= size_ || axis >= dim_) throw IndexError("grid node out of range");
  return nodes_(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(axis));
}

std::vector<double> Grid::node(std::size_t flat) const {
  if (flat >= size_) throw IndexError("grid node out of range");
  std::vector<double> t(dim_);
  for (std::size_t axis = 0; axis < dim_; ++axis) {
    t[axis] = nodes_(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(axis));
  }
  return t;
}

std::size_t Grid::flat_index(std::span<const std::size_t> multi) const {
  if (multi.size() != dim_) {
    throw IndexError("multi-index has " + std::to_string(multi.size()) +
                     " components, grid has " + std::to_string(dim_));
  }
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < dim_; ++axis) {
    if (multi[axis] >= points_) {
      throw IndexError("multi-index component " + std::to_string(multi[axis]) +
                       " on axis " + std::to_string(axis) + " exceeds " +
                       std::to_string(points_ - 1));
    }
    flat = flat * points_ + multi[axis];
  }
  return flat;
}

std::vector<std::size_t> Grid::multi_index(std::size_t flat) const {
  if (flat >= size_) {
    throw IndexError("flat index " + std::to_string(flat) + " out of range");
  }
  std::vector<std::size_t> multi(dim_);
  for (std::size_t axis = dim_; axis-- > 0;) {
    multi[axis] = flat % points_;
    flat /= points_;
  }
  return multi;
}

bool Grid::precedes(std::size_t u, std::size_t s) const {
  // Equal spacing on every axis: compare integer coordinates.
  for (std::size_t axis = dim_; axis-- > 0;) {
    if (u % points_ > s % points_) return false;
    u /= points_;
    s /= points_;
  }
  return true;
}

Grid build_grid(std::size_t dim, std::size_t points_per_axis) {
  return Grid(dim, points_per_axis);
}

double integrate(const Grid& grid, const Eigen::VectorXd& values) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw DomainError("vector length does not match grid size");
  }
  return grid.weights().dot(values);
}

double weighted_norm(const Grid& grid, const Eigen::VectorXd& values) {
  if (static_cast<std::size_t>(values.size()) != grid.size()) {
    throw DomainError("vector length does not match grid size");
  }
  return std::sqrt(grid.weights().dot(values.cwiseAbs2()));
}

}  // namespace fgf
