#include "fgf/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "fgf/errors.hpp"

namespace fgf {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::brownian_sheet: return "brownian_sheet";
    case ModelKind::fractional_brownian_sheet: return "fractional_brownian_sheet";
    case ModelKind::constant_field: return "constant_field";
    case ModelKind::zero_field: return "zero_field";
    case ModelKind::tabulated: return "tabulated";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  for (auto kind : {ModelKind::brownian_sheet, ModelKind::fractional_brownian_sheet,
                    ModelKind::constant_field, ModelKind::zero_field,
                    ModelKind::tabulated}) {
    if (to_string(kind) == name) return kind;
  }
  throw DomainError("unknown covariance model '" + name + "'");
}

CovarianceModel CovarianceModel::brownian_sheet(std::size_t dim) {
  if (dim == 0) throw DomainError("model dimension must be at least 1");
  return CovarianceModel(ModelKind::brownian_sheet, dim);
}

CovarianceModel CovarianceModel::fractional_brownian_sheet(std::vector<double> hurst) {
  if (hurst.empty()) throw DomainError("fractional sheet needs one Hurst index per axis");
  for (double h : hurst) {
    if (!(h > 0.0 && h < 1.0)) {
      throw DomainError("Hurst index must lie in (0, 1), got " + std::to_string(h));
    }
  }
  CovarianceModel model(ModelKind::fractional_brownian_sheet, hurst.size());
  model.hurst_ = std::move(hurst);
  return model;
}

CovarianceModel CovarianceModel::constant_field(std::size_t dim, double variance) {
  if (dim == 0) throw DomainError("model dimension must be at least 1");
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw DomainError("constant field variance must be finite and nonnegative");
  }
  CovarianceModel model(ModelKind::constant_field, dim);
  model.variance_ = variance;
  return model;
}

CovarianceModel CovarianceModel::zero_field(std::size_t dim) {
  if (dim == 0) throw DomainError("model dimension must be at least 1");
  return CovarianceModel(ModelKind::zero_field, dim);
}

CovarianceModel CovarianceModel::tabulated(Grid grid, Eigen::MatrixXd values) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (values.rows() != n || values.cols() != n) {
    throw DomainError("tabulated covariance must be " + std::to_string(n) + " x " +
                      std::to_string(n));
  }
  CovarianceModel model(ModelKind::tabulated, grid.dim());
  model.table_grid_ = std::move(grid);
  model.table_ = std::move(values);
  return model;
}

std::string CovarianceModel::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  switch (kind_) {
    case ModelKind::fractional_brownian_sheet: {
      out << "(H=";
      for (std::size_t k = 0; k < hurst_.size(); ++k) out << (k ? "," : "") << hurst_[k];
      out << ")";
      break;
    }
    case ModelKind::constant_field: out << "(variance=" << variance_ << ")"; break;
    case ModelKind::tabulated:
      out << "(n=" << table_grid_->dim() << ",N=" << table_grid_->points_per_axis() << ")";
      break;
    default: out << "(n=" << dim_ << ")"; break;
  }
  return out.str();
}

std::size_t CovarianceModel::table_cell(std::span<const double> t) const {
  const std::size_t points = table_grid_->points_per_axis();
  std::size_t flat = 0;
  for (double x : t) {
    auto i = static_cast<std::size_t>(
        std::clamp(std::floor(x * static_cast<double>(points)), 0.0,
                   static_cast<double>(points - 1)));
    flat = flat * points + i;
  }
  return flat;
}

double CovarianceModel::evaluate_unchecked(std::span<const double> t,
                                           std::span<const double> s) const {
  switch (kind_) {
    case ModelKind::brownian_sheet: {
      double r = 1.0;
      for (std::size_t k = 0; k < dim_; ++k) r *= std::min(t[k], s[k]);
      return r;
    }
    case ModelKind::fractional_brownian_sheet: {
      double r = 1.0;
      for (std::size_t k = 0; k < dim_; ++k) {
        const double two_h = 2.0 * hurst_[k];
        if (two_h == 1.0) {
          r *= std::min(t[k], s[k]);
          continue;
        }
        r *= 0.5 * (std::pow(t[k], two_h) + std::pow(s[k], two_h) -
                    std::pow(std::abs(t[k] - s[k]), two_h));
      }
      return r;
    }
    case ModelKind::constant_field: return variance_;
    case ModelKind::zero_field: return 0.0;
    case ModelKind::tabulated:
      return table_(static_cast<Eigen::Index>(table_cell(t)),
                    static_cast<Eigen::Index>(table_cell(s)));
  }
  return 0.0;
}

double CovarianceModel::evaluate(std::span<const double> t,
                                 std::span<const double> s) const {
  if (t.size() != dim_ || s.size() != dim_) {
    throw DomainError("point dimension does not match model dimension " +
                      std::to_string(dim_));
  }
  return evaluate_unchecked(t, s);
}

double evaluate(const CovarianceModel& model, std::span<const double> t,
                std::span<const double> s) {
  return model.evaluate(t, s);
}

namespace {

void check_grid(const CovarianceModel& model, const Grid& grid) {
  if (grid.dim() != model.dim()) {
    throw DomainError("grid dimension " + std::to_string(grid.dim()) +
                      " does not match model dimension " + std::to_string(model.dim()));
  }
}

}  // namespace

TraceResult trace(const CovarianceModel& model, const Grid& grid) {
  check_grid(model, grid);
  TraceResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto t = grid.node(i);
    const double r = model.evaluate(t, t);
    if (!std::isfinite(r)) {
      throw NumericalError("non-finite variance R(t, t) = " + std::to_string(r) +
                           " at node " + std::to_string(i));
    }
    result.value += grid.weight() * r;
  }
  result.finite = std::isfinite(result.value);
  return result;
}

Eigen::MatrixXd gram(const CovarianceModel& model, const Grid& grid,
                     std::size_t node_budget) {
  check_grid(model, grid);
  if (grid.size() > node_budget) {
    throw ResourceError("grid has " + std::to_string(grid.size()) +
                        " nodes, exceeding the dense budget of " +
                        std::to_string(node_budget));
  }
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd g(n, n);
  if (model.kind() == ModelKind::tabulated && *model.table_grid() == grid) {
    g = model.table();
  } else {
    std::vector<std::vector<double>> nodes(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) nodes[i] = grid.node(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        g(i, j) = model.evaluate_unchecked(nodes[static_cast<std::size_t>(i)],
                                           nodes[static_cast<std::size_t>(j)]);
      }
    }
  }
  Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  return sym;
}

double hilbert_schmidt_norm(const Eigen::MatrixXd& gram_matrix, const Grid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (gram_matrix.rows() != n || gram_matrix.cols() != n) {
    throw DomainError("matrix does not match grid size");
  }
  return grid.weight() * gram_matrix.norm();
}

}  // namespace fgf
