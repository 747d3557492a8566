#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fgf/covariance.hpp"
#include "fgf/mercer.hpp"
#include "fgf/rkhs.hpp"

namespace fgf::cli {

/// Every knob a subcommand reads. Serialized as a flat JSON object whose keys
/// are the field names below; unknown keys are rejected.
struct RunConfig {
  std::string model = "brownian_sheet";
  std::vector<double> hurst;  ///< one per axis, or a single value broadcast to all axes
  double variance = 1.0;
  std::string cov_file;  ///< tabulated model input

  std::size_t n = 1;
  std::size_t N = 32;
  std::size_t node_budget = kDefaultNodeBudget;
  double clip_tol = kDefaultClipTol;
  std::size_t truncation = 0;  ///< 0 = full rank

  std::string basis = "discrete_delta";
  std::string method = "series";  ///< sample: series | factor
  std::size_t count = 0;
  std::uint64_t seed = 0;

  std::string volterra_file;
  std::string perturbation = "constant";  ///< constant | bump
  double scale = 0.1;
  double width = 0.25;

  std::string f_file;
  std::string g_file;

  std::string out;
  std::string eig_out;
  std::string eigenfunctions_out;
  std::string kernel_out;
  std::string cov_out;

  double membership_tol = kDefaultMembershipTol;
  double reconstruction_tol = 1e-8;
  double trace_tol = 1e-8;
  double band_sigmas = 3.0;
  double band_coverage = 0.99;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const RunConfig& config);
std::string to_json_text(const RunConfig& config);
RunConfig from_json_text(const std::string& text);

/// Checks ranges and builds the covariance model the config describes.
CovarianceModel build_model(const RunConfig& config);

}  // namespace fgf::cli
