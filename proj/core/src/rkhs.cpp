#include "fgf/rkhs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fgf/errors.hpp"

namespace fgf {

namespace {

std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter++;
}

}  // namespace

RkhsSpace::RkhsSpace(const FredholmKernel& kernel, double clip_tol)
    : grid_(kernel.grid), kernel_(kernel.values), id_(next_space_id()) {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  if (kernel_.rows() != n || kernel_.cols() != n) {
    throw DomainError("kernel matrix does not match its grid");
  }
  if (!(clip_tol >= 0.0 && clip_tol < 1.0)) throw DomainError("clip_tol must lie in [0, 1)");

  const Eigen::VectorXd sqrt_w = grid_.weights().cwiseSqrt();
  Eigen::MatrixXd b = sqrt_w.asDiagonal() * kernel_ * sqrt_w.asDiagonal();
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw NumericalError("kernel eigensolver did not converge");

  const Eigen::VectorXd& s = solver.eigenvalues();
  const double s_max = n ? s.cwiseAbs().maxCoeff() : 0.0;
  const double threshold = std::sqrt(clip_tol) * s_max;
  Eigen::Index kept = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(s(k)) > threshold) ++kept;
  }
  modes_.resize(n, kept);
  singular_.resize(kept);
  Eigen::Index col = 0;
  for (Eigen::Index k = n; k-- > 0;) {
    if (std::abs(s(k)) > threshold) {
      modes_.col(col) = solver.eigenvectors().col(k);
      singular_(col) = s(k);
      ++col;
    }
  }
}

Eigen::VectorXd RkhsSpace::apply(const Eigen::VectorXd& g) const {
  return kernel_ * g.cwiseProduct(grid_.weights());
}

RkhsElement RkhsSpace::project(const Eigen::VectorXd& f, double tol) const {
  if (static_cast<std::size_t>(f.size()) != grid_.size()) {
    throw DomainError("function has " + std::to_string(f.size()) + " values, grid has " +
                      std::to_string(grid_.size()) + " nodes");
  }
  if (!f.allFinite()) throw NumericalError("function has non-finite values");

  // With h = D^1/2 f~, the system K D f~ = f reads B h = D^1/2 f and
  // sum_j w_j f~_j^2 = |h|^2, so the pseudo-inverse gives the minimum-norm preimage.
  const Eigen::VectorXd sqrt_w = grid_.weights().cwiseSqrt();
  const Eigen::VectorXd rhs = sqrt_w.cwiseProduct(f);
  Eigen::VectorXd coeffs = modes_.transpose() * rhs;
  coeffs = coeffs.cwiseQuotient(singular_);
  const Eigen::VectorXd h = modes_ * coeffs;

  RkhsElement out{grid_, f, h.cwiseQuotient(sqrt_w), 0.0, false, id_};
  const double f_norm = weighted_norm(grid_, f);
  const double r_norm = weighted_norm(grid_, f - apply(out.preimage));
  out.residual = f_norm > 0.0 ? r_norm / f_norm : r_norm;
  out.accepted = out.residual <= tol;
  return out;
}

RkhsElement project_membership(const RkhsSpace& space, const Eigen::VectorXd& f, double tol) {
  return space.project(f, tol);
}

namespace {

void check_element(const RkhsSpace& space, const RkhsElement& e) {
  if (e.space_id != space.id() || !(e.grid == space.grid())) {
    throw DomainError("element was projected on a different kernel");
  }
  if (!e.accepted) throw DomainError("element is not in the RKHS (rejected by projection)");
}

}  // namespace

double rkhs_inner(const RkhsSpace& space, const RkhsElement& f, const RkhsElement& g) {
  check_element(space, f);
  check_element(space, g);
  return space.grid().weights().dot(f.preimage.cwiseProduct(g.preimage));
}

double rkhs_norm(const RkhsSpace& space, const RkhsElement& f) {
  return std::sqrt(std::max(0.0, rkhs_inner(space, f, f)));
}

}  // namespace fgf
