#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fgf/errors.hpp"
#include "fgf/io.hpp"

namespace fgf::cli {

namespace {

using nlohmann::json;

#define FGF_CONFIG_FIELDS(X)                                                          \
  X(model) X(hurst) X(variance) X(cov_file) X(n) X(N) X(node_budget) X(clip_tol)      \
  X(truncation) X(basis) X(method) X(count) X(seed) X(volterra_file) X(perturbation)  \
  X(scale) X(width) X(f_file) X(g_file) X(out) X(eig_out) X(eigenfunctions_out)       \
  X(kernel_out) X(cov_out) X(membership_tol) X(reconstruction_tol) X(trace_tol)       \
  X(band_sigmas) X(band_coverage)

json to_json(const RunConfig& c) {
  json j;
#define FGF_WRITE(field) j[#field] = c.field;
  FGF_CONFIG_FIELDS(FGF_WRITE)
#undef FGF_WRITE
  return j;
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  static const std::set<std::string> known = {
#define FGF_NAME(field) #field,
      FGF_CONFIG_FIELDS(FGF_NAME)
#undef FGF_NAME
  };
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw DomainError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
#define FGF_READ(field) \
  if (j.contains(#field)) j.at(#field).get_to(c.field);
    FGF_CONFIG_FIELDS(FGF_READ)
#undef FGF_READ
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad config value: ") + e.what());
  }
  return c;
}

#undef FGF_CONFIG_FIELDS

}  // namespace

std::string to_json_text(const RunConfig& config) { return to_json(config).dump(2); }

RunConfig from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

void save_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DomainError("cannot write config '" + path.string() + "'");
  out << to_json_text(config) << '\n';
}

CovarianceModel build_model(const RunConfig& c) {
  if (!(c.clip_tol >= 0.0 && c.clip_tol < 1.0)) throw DomainError("clip_tol must lie in [0, 1)");
  switch (parse_model_kind(c.model)) {
    case ModelKind::brownian_sheet: return CovarianceModel::brownian_sheet(c.n);
    case ModelKind::fractional_brownian_sheet: {
      std::vector<double> h = c.hurst;
      if (h.empty()) throw DomainError("fractional_brownian_sheet needs --hurst");
      if (h.size() == 1) h.assign(c.n, h.front());
      if (h.size() != c.n) {
        throw DomainError("got " + std::to_string(h.size()) + " Hurst indices for n = " +
                          std::to_string(c.n));
      }
      return CovarianceModel::fractional_brownian_sheet(std::move(h));
    }
    case ModelKind::constant_field: return CovarianceModel::constant_field(c.n, c.variance);
    case ModelKind::zero_field: return CovarianceModel::zero_field(c.n);
    case ModelKind::tabulated: {
      if (c.cov_file.empty()) throw DomainError("tabulated model needs --cov-file");
      io::Artifact a = io::read_artifact(c.cov_file, "cov");
      return CovarianceModel::tabulated(io::grid_of(a.header), std::move(a.payload));
    }
  }
  throw DomainError("unhandled model kind");
}

}  // namespace fgf::cli
