#include "fgf/mercer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fgf/errors.hpp"

namespace fgf {

namespace {

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd s = 0.5 * (a + a.transpose());
  return s;
}

double retain_threshold(const Eigen::VectorXd& eigenvalues, double clip_tol) {
  const double lambda_max = eigenvalues.size() ? std::max(eigenvalues(0), 0.0) : 0.0;
  return clip_tol * lambda_max;
}

}  // namespace

std::size_t MercerDecomposition::numerical_rank() const {
  const double threshold = retain_threshold(eigenvalues, clip_tol);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    if (eigenvalues(k) > threshold) ++rank;
  }
  return rank;
}

Eigen::MatrixXd MercerDecomposition::covariance() const {
  return symmetrize(eigenfunctions * eigenvalues.asDiagonal() * eigenfunctions.transpose());
}

MercerDecomposition decompose(const Eigen::MatrixXd& gram_matrix, const Grid& grid,
                              double clip_tol) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (gram_matrix.rows() != n || gram_matrix.cols() != n) {
    throw DomainError("Gram matrix is " + std::to_string(gram_matrix.rows()) + " x " +
                      std::to_string(gram_matrix.cols()) + ", grid has " +
                      std::to_string(n) + " nodes");
  }
  if (!(clip_tol >= 0.0 && clip_tol < 1.0)) {
    throw DomainError("clip_tol must lie in [0, 1)");
  }
  if (!gram_matrix.allFinite()) throw NumericalError("Gram matrix has non-finite entries");

  const Eigen::VectorXd sqrt_w = grid.weights().cwiseSqrt();
  const Eigen::MatrixXd b =
      symmetrize(sqrt_w.asDiagonal() * gram_matrix * sqrt_w.asDiagonal());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& raw_values = solver.eigenvalues();
  const Eigen::MatrixXd& raw_vectors = solver.eigenvectors();

  // Solver order is ascending; stable sort on decreasing value keeps ties in
  // solver order.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return raw_values(a) > raw_values(b);
  });

  MercerDecomposition out{grid, Eigen::VectorXd(n), Eigen::MatrixXd(n, n), 0.0, clip_tol};
  const double lambda_max = n ? std::max(raw_values(order.front()), 0.0) : 0.0;
  const double floor = -clip_tol * lambda_max;
  const Eigen::VectorXd inv_sqrt_w = sqrt_w.cwiseInverse();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    double lambda = raw_values(src);
    if (lambda < 0.0) {
      if (lambda < floor) {
        throw NotPositiveSemidefiniteError(raw_values(order.back()), -floor);
      }
      out.clipped_mass += -lambda;
      lambda = 0.0;
    }
    out.eigenvalues(k) = lambda;

    Eigen::VectorXd u = raw_vectors.col(src);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(u(i)) > std::abs(u(pivot))) pivot = i;
    }
    if (u(pivot) < 0.0) u = -u;
    out.eigenfunctions.col(k) = inv_sqrt_w.asDiagonal() * u;
  }
  return out;
}

MercerDecomposition decompose(const CovarianceModel& model, const Grid& grid,
                              double clip_tol, std::size_t node_budget) {
  return decompose(gram(model, grid, node_budget), grid, clip_tol);
}

FredholmKernel square_root_kernel(const MercerDecomposition& decomp,
                                  std::optional<std::size_t> truncation) {
  const std::size_t available = decomp.size();
  std::size_t rank = truncation.value_or(available);
  if (rank > available) {
    throw DomainError("truncation " + std::to_string(rank) + " exceeds the " +
                      std::to_string(available) + " stored eigenpairs");
  }
  const double threshold = retain_threshold(decomp.eigenvalues, decomp.clip_tol);
  Eigen::Index kept = 0;
  while (kept < static_cast<Eigen::Index>(rank) && decomp.eigenvalues(kept) > threshold) {
    ++kept;
  }

  const auto n = static_cast<Eigen::Index>(decomp.grid.size());
  Eigen::MatrixXd scaled(n, kept);
  for (Eigen::Index k = 0; k < kept; ++k) {
    scaled.col(k) = decomp.eigenfunctions.col(k) * std::sqrt(std::sqrt(decomp.eigenvalues(k)));
  }
  Eigen::MatrixXd k_matrix = Eigen::MatrixXd::Zero(n, n);
  if (kept > 0) k_matrix.noalias() = scaled * scaled.transpose();
  return FredholmKernel{decomp.grid, symmetrize(k_matrix)};
}

Eigen::MatrixXd weighted_outer(const Eigen::MatrixXd& kernel, const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (kernel.rows() != n || kernel.cols() != n) {
    throw DomainError("kernel matrix does not match grid size");
  }
  const Eigen::MatrixXd scaled = kernel * grid.weights().cwiseSqrt().asDiagonal();
  Eigen::MatrixXd r(n, n);
  r.noalias() = scaled * scaled.transpose();
  return symmetrize(r);
}

Eigen::MatrixXd reconstruct_covariance(const FredholmKernel& kernel) {
  return weighted_outer(kernel.values, kernel.grid);
}

double relative_frobenius_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("matrix shapes differ");
  }
  const double diff = (a - b).norm();
  const double ref = b.norm();
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace fgf
