#include "fgf/equivalence.hpp"

#include <cmath>
#include <string>

#include "fgf/errors.hpp"

namespace fgf {

namespace {

void check_square(const Eigen::MatrixXd& m, const Grid& grid, const char* what) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (m.rows() != n || m.cols() != n) {
    throw DomainError(std::string(what) + " is " + std::to_string(m.rows()) + " x " +
                      std::to_string(m.cols()) + ", grid has " + std::to_string(n) +
                      " nodes");
  }
}

}  // namespace

VolterraProjection volterra_project(const Eigen::MatrixXd& raw, const Grid& grid) {
  check_square(raw, grid, "Volterra kernel");
  VolterraProjection out{VolterraKernel{grid, raw}, 0.0};
  const double w2 = grid.weight() * grid.weight();
  auto& l = out.kernel.values;
  for (Eigen::Index j = 0; j < l.cols(); ++j) {
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      if (!grid.precedes(static_cast<std::size_t>(j), static_cast<std::size_t>(i))) {
        out.zeroed_mass += w2 * l(i, j) * l(i, j);
        l(i, j) = 0.0;
      }
    }
  }
  return out;
}

VolterraKernel constant_volterra(const Grid& grid, double scale) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  return volterra_project(Eigen::MatrixXd::Constant(n, n, scale), grid).kernel;
}

VolterraKernel gaussian_bump_volterra(const Grid& grid, double scale, double width) {
  if (!(width > 0.0)) throw DomainError("bump width must be positive");
  const auto n = static_cast<Eigen::Index>(grid.size());
  const Eigen::MatrixXd& x = grid.nodes();
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      raw(i, j) = scale * std::exp(-d2 / (2.0 * width * width));
    }
  }
  return volterra_project(raw, grid).kernel;
}

Eigen::MatrixXd transform_kernel(const FredholmKernel& kernel, const VolterraKernel& volterra) {
  if (!(kernel.grid == volterra.grid)) {
    throw DomainError("kernel and Volterra kernel live on different grids");
  }
  check_square(volterra.values, volterra.grid, "Volterra kernel");
  const Grid& grid = kernel.grid;
  // Entries of L off the Volterra support do not contribute.
  Eigen::MatrixXd support_l = volterra.values;
  for (Eigen::Index j = 0; j < support_l.cols(); ++j) {
    for (Eigen::Index m = 0; m < support_l.rows(); ++m) {
      if (!grid.precedes(static_cast<std::size_t>(j), static_cast<std::size_t>(m))) {
        support_l(m, j) = 0.0;
      }
    }
  }
  Eigen::MatrixXd drift(kernel.values.rows(), kernel.values.cols());
  drift.noalias() = (kernel.values * grid.weights().asDiagonal()) * support_l;
  return kernel.values - drift;
}

Eigen::MatrixXd transform_noise(const VolterraKernel& volterra,
                                const Eigen::MatrixXd& increments, const Grid& grid) {
  if (!(volterra.grid == grid)) throw DomainError("Volterra kernel grid differs from noise grid");
  if (increments.cols() != static_cast<Eigen::Index>(grid.size())) {
    throw DomainError("noise increments need one column per grid node");
  }
  Eigen::MatrixXd support_l = volterra.values;
  for (Eigen::Index m = 0; m < support_l.cols(); ++m) {
    for (Eigen::Index j = 0; j < support_l.rows(); ++j) {
      if (!grid.precedes(static_cast<std::size_t>(m), static_cast<std::size_t>(j))) {
        support_l(j, m) = 0.0;
      }
    }
  }
  // Row r: dW~_j = dW_j - w_j sum_m L(j, m) dW_m, i.e. dW~ = dW - w (L dW).
  Eigen::MatrixXd drift(increments.rows(), increments.cols());
  drift.noalias() = (increments * support_l.transpose()) * grid.weight();
  return increments - drift;
}

Eigen::MatrixXd equivalent_covariance(const Eigen::MatrixXd& transformed, const Grid& grid) {
  check_square(transformed, grid, "transformed kernel");
  return weighted_outer(transformed, grid);
}

}  // namespace fgf
