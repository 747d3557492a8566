#include "fgf/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fgf/errors.hpp"
#include "fgf/parallel.hpp"
#include "fgf/random.hpp"

namespace fgf {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::discrete_delta: return "discrete_delta";
    case BasisKind::haar: return "haar";
    case BasisKind::trigonometric: return "trigonometric";
  }
  return "unknown";
}

BasisKind parse_basis_kind(const std::string& name) {
  for (auto kind : {BasisKind::discrete_delta, BasisKind::haar, BasisKind::trigonometric}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown basis '" + name + "'");
}

namespace {

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

// points x points matrix; column k is the k-th 1-D function at the midpoints.
Eigen::MatrixXd haar_1d(std::size_t points) {
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h.col(0).setOnes();
  for (Eigen::Index m = 1; m < n; ++m) {
    Eigen::Index level = 0;
    while ((Eigen::Index{2} << level) <= m) ++level;
    const Eigen::Index blocks = Eigen::Index{1} << level;
    const Eigen::Index position = m - blocks;
    const Eigen::Index width = n / blocks;
    const double height = std::sqrt(static_cast<double>(blocks));
    for (Eigen::Index i = 0; i < width / 2; ++i) {
      h(position * width + i, m) = height;
      h(position * width + width / 2 + i, m) = -height;
    }
  }
  return h;
}

Eigen::MatrixXd cosine_1d(std::size_t points) {
  const auto n = static_cast<Eigen::Index>(points);
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    c(i, 0) = 1.0;
    for (Eigen::Index k = 1; k < n; ++k) {
      c(i, k) = std::numbers::sqrt2 * std::cos(static_cast<double>(k) * std::numbers::pi * t);
    }
  }
  return c;
}

// Tensor multi-indices ordered by total degree, then lexicographically.
std::vector<std::vector<std::size_t>> tensor_order(const Grid& grid) {
  std::vector<std::vector<std::size_t>> order;
  order.reserve(grid.size());
  for (std::size_t flat = 0; flat < grid.size(); ++flat) order.push_back(grid.multi_index(flat));
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    std::size_t sa = 0, sb = 0;
    for (auto x : a) sa += x;
    for (auto x : b) sb += x;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return order;
}

void check_kernel_basis(const FredholmKernel& kernel, const Basis& basis) {
  if (!(kernel.grid == basis.grid)) {
    throw DomainError("kernel and basis live on different grids");
  }
}

}  // namespace

Basis make_basis(BasisKind kind, const Grid& grid, std::optional<std::size_t> count) {
  const std::size_t capacity = grid.size();
  const std::size_t wanted = count.value_or(capacity);
  if (wanted > capacity) {
    throw DomainError("requested " + std::to_string(wanted) + " basis functions, grid holds " +
                      std::to_string(capacity));
  }
  const auto n = static_cast<Eigen::Index>(capacity);
  Basis basis{kind, grid, Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(wanted))};

  if (kind == BasisKind::discrete_delta) {
    const double height = 1.0 / std::sqrt(grid.weight());
    for (Eigen::Index j = 0; j < basis.values.cols(); ++j) basis.values(j, j) = height;
    return basis;
  }

  if (kind == BasisKind::haar && !is_power_of_two(grid.points_per_axis())) {
    throw DomainError("Haar basis needs a power-of-two number of points per axis, got " +
                      std::to_string(grid.points_per_axis()));
  }
  const Eigen::MatrixXd one_d = kind == BasisKind::haar ? haar_1d(grid.points_per_axis())
                                                        : cosine_1d(grid.points_per_axis());
  const auto order = tensor_order(grid);
  for (std::size_t col = 0; col < wanted; ++col) {
    const auto& freq = order[col];
    for (std::size_t flat = 0; flat < capacity; ++flat) {
      const auto node = grid.multi_index(flat);
      double v = 1.0;
      for (std::size_t axis = 0; axis < grid.dim(); ++axis) {
        v *= one_d(static_cast<Eigen::Index>(node[axis]), static_cast<Eigen::Index>(freq[axis]));
      }
      basis.values(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return basis;
}

Eigen::VectorXd coefficient_field(const FredholmKernel& kernel, const Basis& basis,
                                  std::size_t k) {
  check_kernel_basis(kernel, basis);
  if (k >= basis.count()) {
    throw DomainError("basis index " + std::to_string(k) + " out of range");
  }
  const Eigen::VectorXd weighted =
      basis.values.col(static_cast<Eigen::Index>(k)).cwiseProduct(kernel.grid.weights());
  return kernel.values * weighted;
}

Eigen::MatrixXd coefficient_matrix(const FredholmKernel& kernel, const Basis& basis,
                                   std::optional<std::size_t> truncation) {
  check_kernel_basis(kernel, basis);
  const std::size_t t = truncation.value_or(basis.count());
  if (t > basis.count()) {
    throw DomainError("truncation " + std::to_string(t) + " exceeds basis count " +
                      std::to_string(basis.count()));
  }
  const Eigen::MatrixXd weighted =
      kernel.grid.weights().asDiagonal() * basis.values.leftCols(static_cast<Eigen::Index>(t));
  Eigen::MatrixXd c = kernel.values * weighted;
  return c;
}

Eigen::MatrixXd coefficient_gram(const Eigen::MatrixXd& coefficients) {
  Eigen::MatrixXd g = coefficients * coefficients.transpose();
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  return sym;
}

Eigen::VectorXd truncation_error_curve(const FredholmKernel& kernel, const Basis& basis) {
  const Eigen::MatrixXd c = coefficient_matrix(kernel, basis);
  const Eigen::VectorXd variance = reconstruct_covariance(kernel).diagonal();
  const Eigen::VectorXd& w = kernel.grid.weights();
  Eigen::VectorXd curve(c.cols() + 1);
  double remaining = w.dot(variance);
  curve(0) = remaining;
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    remaining -= w.dot(c.col(k).cwiseAbs2());
    curve(k + 1) = remaining;
  }
  return curve;
}

namespace {

// Each realization is a matrix-vector product on its own stream, so row m
// depends only on (factor, seed, m).
Eigen::MatrixXd draw_rows(const Eigen::MatrixXd& factor, std::size_t count,
                          std::uint64_t seed) {
  const Eigen::Index nodes = factor.rows();
  const Eigen::Index rank = factor.cols();
  Eigen::MatrixXd data(static_cast<Eigen::Index>(count), nodes);
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (count + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    Eigen::VectorXd xi(rank);
    Eigen::VectorXd x(nodes);
    const std::size_t end = std::min(count, (b + 1) * kBlock);
    for (std::size_t m = b * kBlock; m < end; ++m) {
      NormalStream(seed, m).fill(xi);
      x.noalias() = factor * xi;
      data.row(static_cast<Eigen::Index>(m)) = x.transpose();
    }
  });
  return data;
}

}  // namespace

FieldSamples sample_series(const FredholmKernel& kernel, const Basis& basis,
                           std::size_t truncation, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw DomainError("sample count must be at least 1");
  const Eigen::MatrixXd c = coefficient_matrix(kernel, basis, truncation);
  FieldSamples out{kernel.grid, draw_rows(c, count, seed),
                   SampleMeta{"series", to_string(basis.kind), truncation, seed}};
  if (!out.data.allFinite()) throw NumericalError("series sampler produced non-finite values");
  return out;
}

FieldSamples sample_factor(const CovarianceModel& model, const Grid& grid,
                           std::size_t count, std::uint64_t seed, double clip_tol) {
  if (count == 0) throw DomainError("sample count must be at least 1");
  const MercerDecomposition decomp = decompose(model, grid, clip_tol);
  const auto rank = static_cast<Eigen::Index>(decomp.numerical_rank());
  Eigen::MatrixXd factor = decomp.eigenfunctions.leftCols(rank);
  for (Eigen::Index k = 0; k < rank; ++k) factor.col(k) *= std::sqrt(decomp.eigenvalues(k));
  FieldSamples out{grid, draw_rows(factor, count, seed + kFactorSeedOffset),
                   SampleMeta{"factor", "spectral", static_cast<std::size_t>(rank), seed}};
  if (!out.data.allFinite()) throw NumericalError("factor sampler produced non-finite values");
  return out;
}

Eigen::MatrixXd empirical_covariance(const FieldSamples& samples) {
  if (samples.count() < 2) throw DomainError("empirical covariance needs at least 2 samples");
  Eigen::MatrixXd c = samples.data.transpose() * samples.data;
  c /= static_cast<double>(samples.count());
  Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  return sym;
}

Eigen::MatrixXd monte_carlo_sigma(const Eigen::MatrixXd& reference, std::size_t count) {
  const Eigen::VectorXd d = reference.diagonal();
  Eigen::MatrixXd var = d * d.transpose() + reference.cwiseAbs2();
  return (var / static_cast<double>(count)).cwiseSqrt();
}

double band_coverage(const Eigen::MatrixXd& empirical, const Eigen::MatrixXd& reference,
                     std::size_t count, double sigmas) {
  if (empirical.rows() != reference.rows() || empirical.cols() != reference.cols()) {
    throw DomainError("matrix shapes differ");
  }
  const Eigen::MatrixXd sigma = monte_carlo_sigma(reference, count);
  const Eigen::MatrixXd diff = (empirical - reference).cwiseAbs();
  std::size_t inside = 0;
  for (Eigen::Index j = 0; j < diff.cols(); ++j) {
    for (Eigen::Index i = 0; i < diff.rows(); ++i) {
      if (diff(i, j) <= sigmas * sigma(i, j)) ++inside;
    }
  }
  return diff.size() ? static_cast<double>(inside) / static_cast<double>(diff.size()) : 1.0;
}

}  // namespace fgf
