#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "fgf/grid.hpp"
#include "fgf/sampling.hpp"

namespace fgf::io {

/// Section ids: cov, eig, ker, smp, vlt.
inline constexpr const char* kSections[] = {"cov", "eig", "ker", "smp", "vlt"};
inline constexpr int kFormatVersion = 1;

struct ArtifactHeader {
  std::string section;
  std::size_t n = 0;
  std::size_t N = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t seed = 0;
  std::string model;
  /// Extra string-valued fields (basis, generator, truncation, ...).
  std::map<std::string, std::string> attributes;
};

struct Artifact {
  ArtifactHeader header;
  Eigen::MatrixXd payload;
};

/// Layout: the 4 bytes "FGF1", one line of UTF-8 JSON holding the header,
/// '\n', then rows * cols little-endian float64 values in row-major order.
void write_binary(const std::filesystem::path& path, const Artifact& artifact);
Artifact read_binary(const std::filesystem::path& path,
                     std::optional<std::string> expected_section = std::nullopt);

/// First line "fgf-<section>,v1,<n>,<N>", then one matrix row per line with
/// values printed to 17 significant digits.
void write_csv(const std::filesystem::path& path, const Artifact& artifact);
/// Also accepts headerless numeric CSV; n and N are then left at zero.
Artifact read_csv(const std::filesystem::path& path,
                  std::optional<std::string> expected_section = std::nullopt);

/// Dispatches on the extension: ".csv" is text, anything else binary.
void write_artifact(const std::filesystem::path& path, const Artifact& artifact);
Artifact read_artifact(const std::filesystem::path& path,
                       std::optional<std::string> expected_section = std::nullopt);

Artifact make_artifact(std::string section, const Grid& grid, Eigen::MatrixXd payload,
                       std::string model = {}, std::uint64_t seed = 0);

Artifact samples_artifact(const FieldSamples& samples, std::string model);
FieldSamples samples_from_artifact(const Artifact& artifact);

/// Grid named by the header; throws FormatError when n or N is missing.
Grid grid_of(const ArtifactHeader& header);

}  // namespace fgf::io
