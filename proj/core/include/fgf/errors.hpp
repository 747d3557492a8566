#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgf {

/// Invalid argument: bad dimension, mismatched grids, out-of-capacity counts.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Multi-index or flat index outside the grid.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A request whose dense storage would exceed the configured node budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or spectral failures.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by decomposition when an eigenvalue lies below -clip_tol * lambda_max.
class NotPositiveSemidefiniteError : public NumericalError {
 public:
  NotPositiveSemidefiniteError(double worst_eigenvalue, double threshold)
      : NumericalError("covariance is not positive semidefinite: eigenvalue " +
                       std::to_string(worst_eigenvalue) + " below -" +
                       std::to_string(threshold)),
        worst_eigenvalue_(worst_eigenvalue) {}

  double worst_eigenvalue() const noexcept { return worst_eigenvalue_; }

 private:
  double worst_eigenvalue_;
};

/// Malformed or version-mismatched artifact file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgf
