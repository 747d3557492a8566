#include "cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fgf/covariance.hpp"
#include "fgf/equivalence.hpp"
#include "fgf/errors.hpp"
#include "fgf/io.hpp"
#include "fgf/mercer.hpp"
#include "fgf/rkhs.hpp"
#include "fgf/sampling.hpp"
#include "run_config.hpp"

namespace fgf::cli {

namespace {

using nlohmann::json;

/// A failed verification: reported like a validation error (exit 1).
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Grid grid_for(const RunConfig& c, const CovarianceModel& model) {
  if (model.kind() == ModelKind::tabulated) return *model.table_grid();
  return Grid(c.n, c.N);
}

std::optional<std::size_t> truncation_of(const RunConfig& c) {
  if (c.truncation == 0) return std::nullopt;
  return c.truncation;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw DomainError(std::string("missing required ") + flag);
}

json cmd_kernel(const RunConfig& c) {
  const CovarianceModel model = build_model(c);
  const Grid grid = grid_for(c, model);
  const MercerDecomposition decomp = decompose(model, grid, c.clip_tol, c.node_budget);
  const FredholmKernel kernel = square_root_kernel(decomp, truncation_of(c));
  const TraceResult tr = trace(model, grid);
  const double eig_sum = decomp.eigenvalues.sum();

  if (!c.eig_out.empty()) {
    io::Artifact a = io::make_artifact("eig", grid, decomp.eigenvalues.transpose(),
                                       model.describe());
    a.header.attributes = {{"content", "eigenvalues"}};
    io::write_artifact(c.eig_out, a);
  }
  if (!c.eigenfunctions_out.empty()) {
    io::Artifact a = io::make_artifact("eig", grid, decomp.eigenfunctions, model.describe());
    a.header.attributes = {{"content", "eigenfunctions"}};
    io::write_artifact(c.eigenfunctions_out, a);
  }
  if (!c.kernel_out.empty()) {
    io::write_artifact(c.kernel_out,
                       io::make_artifact("ker", grid, kernel.values, model.describe()));
  }
  return {{"model", model.describe()},
          {"nodes", grid.size()},
          {"trace", tr.value},
          {"trace_finite", tr.finite},
          {"eigenvalue_sum", eig_sum},
          {"leading_eigenvalue", decomp.eigenvalues.size() ? decomp.eigenvalues(0) : 0.0},
          {"numerical_rank", decomp.numerical_rank()},
          {"clipped_mass", decomp.clipped_mass}};
}

json cmd_sample(const RunConfig& c) {
  require(c.out, "--out");
  if (c.count == 0) throw DomainError("--count must be at least 1");
  const CovarianceModel model = build_model(c);
  const Grid grid = grid_for(c, model);
  FieldSamples samples = [&] {
    if (c.method == "factor") return sample_factor(model, grid, c.count, c.seed, c.clip_tol);
    if (c.method != "series") throw DomainError("unknown sampling method '" + c.method + "'");
    const FredholmKernel kernel =
        square_root_kernel(decompose(model, grid, c.clip_tol, c.node_budget));
    const Basis basis = make_basis(parse_basis_kind(c.basis), grid);
    const std::size_t t = c.truncation == 0 ? basis.count() : c.truncation;
    return sample_series(kernel, basis, t, c.count, c.seed);
  }();
  io::write_artifact(c.out, io::samples_artifact(samples, model.describe()));
  return {{"model", model.describe()},
          {"generator", samples.meta.generator},
          {"basis", samples.meta.basis},
          {"truncation", samples.meta.truncation},
          {"count", samples.count()},
          {"seed", c.seed},
          {"out", c.out}};
}

json cmd_verify(const RunConfig& c) {
  const CovarianceModel model = build_model(c);
  const Grid grid = grid_for(c, model);
  const MercerDecomposition decomp = decompose(model, grid, c.clip_tol, c.node_budget);
  const FredholmKernel kernel = square_root_kernel(decomp, truncation_of(c));
  const Eigen::MatrixXd reference = decomp.covariance();
  const double recon = relative_frobenius_error(reconstruct_covariance(kernel), reference);
  const double trace_gap = std::abs(decomp.eigenvalues.sum() - trace(model, grid).value);
  const Eigen::MatrixXd g = gram(model, grid, c.node_budget);
  const double hs = hilbert_schmidt_norm(g, grid);
  const double tr = trace(model, grid).value;

  json report = {{"model", model.describe()},
                 {"reconstruction_error", recon},
                 {"reconstruction_ok", recon <= c.reconstruction_tol},
                 {"trace_gap", trace_gap},
                 {"trace_ok", trace_gap <= c.trace_tol},
                 {"hilbert_schmidt_norm", hs},
                 {"hilbert_schmidt_ok", hs <= tr + 1e-8}};
  bool ok = recon <= c.reconstruction_tol && trace_gap <= c.trace_tol && hs <= tr + 1e-8;

  if (c.count >= 2) {
    const Basis basis = make_basis(parse_basis_kind(c.basis), grid);
    const std::size_t t = c.truncation == 0 ? basis.count() : c.truncation;
    const FieldSamples samples = sample_series(kernel, basis, t, c.count, c.seed);
    const double coverage =
        band_coverage(empirical_covariance(samples), reference, c.count, c.band_sigmas);
    report["monte_carlo_coverage"] = coverage;
    report["monte_carlo_ok"] = coverage >= c.band_coverage;
    ok = ok && coverage >= c.band_coverage;
  }
  report["ok"] = ok;
  if (!ok) throw CheckFailed(report.dump());
  return report;
}

json cmd_equivalence(const RunConfig& c) {
  const CovarianceModel model = build_model(c);
  const Grid grid = grid_for(c, model);
  const FredholmKernel kernel =
      square_root_kernel(decompose(model, grid, c.clip_tol, c.node_budget), truncation_of(c));

  VolterraKernel volterra{grid, {}};
  double zeroed_mass = 0.0;
  if (!c.volterra_file.empty()) {
    io::Artifact a = io::read_artifact(c.volterra_file, "vlt");
    VolterraProjection p = volterra_project(a.payload, grid);
    volterra = std::move(p.kernel);
    zeroed_mass = p.zeroed_mass;
  } else if (c.perturbation == "constant") {
    volterra = constant_volterra(grid, c.scale);
  } else if (c.perturbation == "bump") {
    volterra = gaussian_bump_volterra(grid, c.scale, c.width);
  } else {
    throw DomainError("unknown perturbation '" + c.perturbation + "'");
  }
  const Eigen::MatrixXd transformed = transform_kernel(kernel, volterra);
  const Eigen::MatrixXd cov = equivalent_covariance(transformed, grid);
  if (!transformed.allFinite()) throw NumericalError("transformed kernel is not finite");

  if (!c.kernel_out.empty()) {
    io::write_artifact(c.kernel_out, io::make_artifact("ker", grid, transformed,
                                                       model.describe() + "+hitsuda"));
  }
  if (!c.cov_out.empty()) {
    io::write_artifact(c.cov_out,
                       io::make_artifact("cov", grid, cov, model.describe() + "+hitsuda"));
  }
  return {{"model", model.describe()},
          {"zeroed_mass", zeroed_mass},
          {"kernel_change", (transformed - kernel.values).norm()},
          {"covariance_trace", grid.weights().dot(cov.diagonal())}};
}

json element_report(const RkhsSpace& space, const RkhsElement& e) {
  json j = {{"accepted", e.accepted}, {"residual", e.residual}};
  if (e.accepted) j["norm"] = rkhs_norm(space, e);
  return j;
}

Eigen::VectorXd read_function(const std::string& path, const Grid& grid) {
  const io::Artifact a = io::read_csv(path);
  Eigen::MatrixXd p = a.payload;
  Eigen::VectorXd v;
  if (p.cols() == 1) {
    v = p.col(0);
  } else if (p.rows() == 1) {
    v = p.row(0).transpose();
  } else {
    throw FormatError("'" + path + "' must hold a single row or column");
  }
  if (static_cast<std::size_t>(v.size()) != grid.size()) {
    throw DomainError("'" + path + "' has " + std::to_string(v.size()) +
                      " values, grid has " + std::to_string(grid.size()));
  }
  return v;
}

json cmd_rkhs(const RunConfig& c) {
  require(c.f_file, "--f");
  const CovarianceModel model = build_model(c);
  const Grid grid = grid_for(c, model);
  const FredholmKernel kernel =
      square_root_kernel(decompose(model, grid, c.clip_tol, c.node_budget), truncation_of(c));
  const RkhsSpace space(kernel, c.clip_tol);
  const RkhsElement f = space.project(read_function(c.f_file, grid), c.membership_tol);
  json report = {{"model", model.describe()}, {"f", element_report(space, f)}};
  if (!c.g_file.empty()) {
    const RkhsElement g = space.project(read_function(c.g_file, grid), c.membership_tol);
    report["g"] = element_report(space, g);
    if (f.accepted && g.accepted) report["inner"] = rkhs_inner(space, f, g);
  }
  return report;
}

void bind_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "brownian_sheet | fractional_brownian_sheet | "
                                      "constant_field | zero_field | tabulated");
  sub->add_option("--hurst", c.hurst, "Hurst index per axis (one value broadcasts)");
  sub->add_option("--variance", c.variance, "constant_field variance");
  sub->add_option("--cov-file", c.cov_file, "tabulated covariance (cov section)");
  sub->add_option("--n", c.n, "dimension of the time cube");
  sub->add_option("--N", c.N, "grid points per axis");
  sub->add_option("--node-budget", c.node_budget, "max N^n for dense matrices");
  sub->add_option("--clip-tol", c.clip_tol, "relative eigenvalue clipping threshold");
  sub->add_option("--truncation", c.truncation, "rank cap / series truncation (0 = full)");
}

void bind_sampling(CLI::App* sub, RunConfig& c) {
  sub->add_option("--basis", c.basis, "discrete_delta | haar | trigonometric");
  sub->add_option("--count", c.count, "number of realizations M");
  sub->add_option("--seed", c.seed, "stream seed");
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    if (auto path = find_config_path(args)) config = load_config(*path);
  } catch (const std::exception& e) {
    err << "fgf: " << e.what() << '\n';
    return kValidationFailure;
  }

  CLI::App app{"Fredholm-kernel Gaussian field toolkit"};
  app.name("fgf");
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration; flags override it");

  auto* kernel = app.add_subcommand("kernel", "eigenvalues and square-root kernel");
  bind_common(kernel, config);
  kernel->add_option("--eig-out", config.eig_out, "eigenvalue artifact");
  kernel->add_option("--eigenfunctions-out", config.eigenfunctions_out,
                     "eigenfunction artifact");
  kernel->add_option("--kernel-out", config.kernel_out, "kernel artifact");

  auto* sample = app.add_subcommand("sample", "draw field realizations");
  bind_common(sample, config);
  bind_sampling(sample, config);
  sample->add_option("--method", config.method, "series | factor");
  sample->add_option("--out", config.out, "sample artifact (.csv for text)");

  auto* verify = app.add_subcommand("verify", "reconstruction, trace and Monte Carlo checks");
  bind_common(verify, config);
  bind_sampling(verify, config);
  verify->add_option("--reconstruction-tol", config.reconstruction_tol);
  verify->add_option("--trace-tol", config.trace_tol);
  verify->add_option("--band-sigmas", config.band_sigmas);
  verify->add_option("--band-coverage", config.band_coverage);

  auto* equivalence = app.add_subcommand("equivalence", "Volterra-perturbed kernel");
  bind_common(equivalence, config);
  equivalence->add_option("--volterra", config.volterra_file, "perturbation (vlt section)");
  equivalence->add_option("--perturbation", config.perturbation, "constant | bump");
  equivalence->add_option("--scale", config.scale);
  equivalence->add_option("--width", config.width);
  equivalence->add_option("--kernel-out", config.kernel_out, "transformed kernel artifact");
  equivalence->add_option("--cov-out", config.cov_out, "transformed covariance artifact");

  auto* rkhs = app.add_subcommand("rkhs", "RKHS membership, norm and inner product");
  bind_common(rkhs, config);
  rkhs->add_option("--f", config.f_file, "function values (CSV, canonical order)");
  rkhs->add_option("--g", config.g_file, "second function for the inner product");
  rkhs->add_option("--membership-tol", config.membership_tol);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    json report;
    if (*kernel) report = cmd_kernel(config);
    else if (*sample) report = cmd_sample(config);
    else if (*verify) report = cmd_verify(config);
    else if (*equivalence) report = cmd_equivalence(config);
    else report = cmd_rkhs(config);
    out << report.dump(2) << '\n';
    return kOk;
  } catch (const CheckFailed& e) {
    out << json::parse(e.what()).dump(2) << '\n';
    err << "fgf: verification failed\n";
    return kValidationFailure;
  } catch (const NumericalError& e) {
    err << "fgf: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const FormatError& e) {
    err << "fgf: format error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "fgf: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace fgf::cli
