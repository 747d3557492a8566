// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fgf/equivalence.hpp"
#include "fgf/mercer.hpp"
#include "fgf/random.hpp"
#include "fgf/rkhs.hpp"
#include "fgf/sampling.hpp"
#include "run_config.hpp"
#include "test_support.hpp"

namespace {

using namespace fgf;
namespace fs = std::filesystem;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit;  // seconds, 0 when there is none
  std::function<Outcome()> check;
};

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

FredholmKernel kernel_of(const CovarianceModel& model, const Grid& grid) {
  return square_root_kernel(decompose(model, grid));
}

Outcome reconstruction() {
  double worst = 0.0;
  for (const Grid& g : {Grid(1, 128), Grid(2, 24)}) {
    for (const auto& model : testing::catalog(g)) {
      const auto d = decompose(model, g);
      worst = std::max(worst, relative_frobenius_error(
                                  reconstruct_covariance(square_root_kernel(d)), d.covariance()));
    }
  }
  return {worst <= 1e-8, fmt("worst relative error %.3e (tol 1e-8)", worst)};
}

Outcome trace_identity() {
  double worst = 0.0;
  for (const Grid& g : {Grid(1, 16), Grid(1, 128), Grid(2, 8), Grid(2, 24), Grid(3, 6)}) {
    for (const auto& model : testing::catalog(g)) {
      const auto d = decompose(model, g);
      worst = std::max(worst, std::abs(d.eigenvalues.sum() - trace(model, g).value));
    }
  }
  return {worst <= 1e-8, fmt("worst gap %.3e (tol 1e-8)", worst)};
}

Outcome spectral_convergence() {
  const double l1 = decompose(CovarianceModel::brownian_sheet(1), Grid(1, 512)).eigenvalues(0);
  const double gap = std::abs(l1 - testing::kBrownianRichardsonLimit);
  return {gap <= 1e-3, fmt("lambda1(512) = %.12f, gap %.3e (tol 1e-3)", l1, gap)};
}

Outcome series_expansion() {
  const Grid g(1, 32);
  const auto k = kernel_of(CovarianceModel::brownian_sheet(1), g);
  const auto delta = make_basis(BasisKind::discrete_delta, g);
  const auto haar = make_basis(BasisKind::haar, g);
  const auto trig = make_basis(BasisKind::trigonometric, g);
  const Eigen::MatrixXd ref = coefficient_gram(coefficient_matrix(k, delta));
  const double parseval =
      std::max((coefficient_gram(coefficient_matrix(k, haar)) - ref).cwiseAbs().maxCoeff(),
               (coefficient_gram(coefficient_matrix(k, trig)) - ref).cwiseAbs().maxCoeff());
  double tail = 0.0;
  for (const auto* b : {&delta, &haar, &trig}) {
    const Eigen::VectorXd curve = truncation_error_curve(k, *b);
    tail = std::max(tail, curve(curve.size() - 1));
  }
  return {parseval <= 1e-8 && tail <= 1e-8,
          fmt("Gram gap %.3e, curve end %.3e (tol 1e-8)", parseval, tail)};
}

Outcome monte_carlo() {
  constexpr std::size_t kCount = 20000;
  double worst = 1.0;
  for (const Grid& g : {Grid(1, 32), Grid(2, 6)}) {
    for (const auto& model : {CovarianceModel::brownian_sheet(g.dim()),
                              CovarianceModel::fractional_brownian_sheet(
                                  std::vector<double>(g.dim(), 0.7))}) {
      const auto d = decompose(model, g);
      const auto k = square_root_kernel(d);
      const auto basis = make_basis(BasisKind::trigonometric, g);
      const auto s = sample_series(k, basis, basis.count(), kCount, 2024);
      worst = std::min(worst, testing::fraction_within_band(empirical_covariance(s),
                                                            d.covariance(), kCount, 3.0));
    }
  }
  return {worst >= 0.99, fmt("lowest in-band fraction %.4f (need 0.99)", worst)};
}

Outcome equivalence() {
  const Grid g(1, 16);
  const auto k = kernel_of(CovarianceModel::brownian_sheet(1), g);
  const Eigen::MatrixXd same = transform_kernel(k, VolterraKernel{g, Eigen::MatrixXd::Zero(16, 16)});
  const bool identity = std::memcmp(same.data(), k.values.data(), sizeof(double) * same.size()) == 0;

  const auto l = gaussian_bump_volterra(g, 0.1, 0.25);
  VolterraKernel scaled{g, 2.5 * l.values};
  const Eigen::MatrixXd delta1 = transform_kernel(k, l) - k.values;
  const Eigen::MatrixXd delta2 = transform_kernel(k, scaled) - k.values;
  const double linear = (delta2 - 2.5 * delta1).cwiseAbs().maxCoeff();

  constexpr std::size_t kCount = 20000;
  const auto lc = constant_volterra(g, 0.1);
  Eigen::MatrixXd increments(kCount, 16);
  Eigen::VectorXd xi(16);
  for (std::size_t m = 0; m < kCount; ++m) {
    NormalStream(31, m).fill(xi);
    increments.row(static_cast<Eigen::Index>(m)) = std::sqrt(g.weight()) * xi.transpose();
  }
  const FieldSamples field{g, transform_noise(lc, increments, g) * k.values.transpose(), {}};
  const double inside = testing::fraction_within_band(
      empirical_covariance(field), equivalent_covariance(transform_kernel(k, lc), g), kCount, 3.0);
  return {identity && linear <= 1e-12 && inside >= 0.99,
          std::string(identity ? "L=0 bitwise identical" : "L=0 NOT identical") +
              fmt(", linearity %.3e (tol 1e-12), in-band %.4f (need 0.99)", linear, inside)};
}

Outcome reproducing() {
  const Grid g(1, 64);
  double worst = 0.0;
  bool all_accepted = true;
  for (const auto& model : {CovarianceModel::brownian_sheet(1),
                            CovarianceModel::fractional_brownian_sheet({0.7})}) {
    const Eigen::MatrixXd r = gram(model, g);
    const RkhsSpace space(kernel_of(model, g));
    std::vector<RkhsElement> slices;
    for (Eigen::Index i = 0; i < 64; ++i) {
      slices.push_back(space.project(r.col(i)));
      all_accepted = all_accepted && slices.back().accepted;
    }
    if (!all_accepted) break;
    for (Eigen::Index i = 0; i < 64; ++i) {
      for (Eigen::Index j = 0; j < 64; ++j) {
        worst = std::max(worst, std::abs(rkhs_inner(space, slices[i], slices[j]) - r(i, j)));
      }
    }
  }
  return {all_accepted && worst <= 1e-6,
          all_accepted ? fmt("worst entry error %.3e (tol 1e-6)", worst)
                       : std::string("a covariance slice was rejected")};
}

Outcome edge_cases() {
  const Grid g(2, 8);
  const auto dc = decompose(CovarianceModel::constant_field(2, 1.0), g);
  const auto kc = square_root_kernel(dc);
  const double lambda_err = std::abs(dc.eigenvalues(0) - 1.0);
  const double kernel_err = (kc.values.array() - 1.0).abs().maxCoeff();
  const bool rank_one = dc.numerical_rank() == 1;

  const auto dz = decompose(CovarianceModel::zero_field(2), g);
  const auto kz = square_root_kernel(dz);
  const auto basis = make_basis(BasisKind::haar, g);
  const auto s = sample_series(kz, basis, basis.count(), 100, 1);
  const bool zero = kz.values.isZero(0.0) && s.data.isZero(0.0) && dz.numerical_rank() == 0;
  return {rank_one && lambda_err <= 1e-12 && kernel_err <= 1e-12 && zero,
          fmt("constant: |lambda1-1| %.1e, |K-1| %.1e", lambda_err, kernel_err) +
              (rank_one ? ", rank 1" : ", rank != 1") +
              (zero ? "; zero field exact" : "; zero field NOT zero")};
}

Outcome reproducibility() {
  const fs::path dir = fs::temp_directory_path() / "fgf_acceptance";
  fs::create_directories(dir);
  cli::RunConfig c;
  c.model = "fractional_brownian_sheet";
  c.hurst = {0.7};
  c.n = 2;
  c.N = 8;
  c.count = 500;
  c.seed = 7;
  c.basis = "haar";
  cli::save_config((dir / "run.json").string(), c);
  std::ostringstream out, err;
  const auto run_to = [&](const std::string& name) {
    const std::string path = (dir / name).string();
    const int code = cli::run({"sample", "--config", (dir / "run.json").string(), "--out", path},
                              out, err);
    std::ifstream in(path, std::ios::binary);
    return std::pair{code, std::string(std::istreambuf_iterator<char>(in), {})};
  };
  const auto [code_a, a] = run_to("a.bin");
  const auto [code_b, b] = run_to("b.bin");
  fs::remove_all(dir);
  const bool pass = code_a == 0 && code_b == 0 && !a.empty() && a == b;
  return {pass, pass ? "byte-identical (" + std::to_string(a.size()) + " bytes)"
                     : "outputs differ or a run failed: " + err.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"reconstruction identity", 30.0, reconstruction},
      {"trace identity", 0.0, trace_identity},
      {"spectral convergence", 0.0, spectral_convergence},
      {"series expansion", 0.0, series_expansion},
      {"monte carlo covariance", 60.0, monte_carlo},
      {"equivalence transform", 0.0, equivalence},
      {"reproducing property", 0.0, reproducing},
      {"edge cases", 1.0, edge_cases},
      {"reproducibility", 0.0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt("; over time limit %.0f s", c.time_limit);
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s  %-24s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
