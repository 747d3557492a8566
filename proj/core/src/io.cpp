#include "fgf/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgf/errors.hpp"

namespace fgf::io {

namespace {

using nlohmann::json;

constexpr char kMagicPrefix[] = "FGF";

bool known_section(const std::string& section) {
  return std::any_of(std::begin(kSections), std::end(kSections),
                     [&](const char* s) { return section == s; });
}

void check_section(const ArtifactHeader& header, const std::optional<std::string>& expected) {
  if (!known_section(header.section)) {
    throw FormatError("unknown section '" + header.section + "'");
  }
  if (expected && header.section != *expected) {
    throw FormatError("expected section '" + *expected + "', file holds '" + header.section +
                      "'");
  }
}

void check_payload(const Artifact& artifact) {
  if (static_cast<std::size_t>(artifact.payload.rows()) != artifact.header.rows ||
      static_cast<std::size_t>(artifact.payload.cols()) != artifact.header.cols) {
    throw FormatError("header shape does not match payload shape");
  }
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::little) {
    return bits;
  } else {
    std::uint64_t out = 0;
    for (int b = 0; b < 8; ++b) out |= ((bits >> (8 * b)) & 0xFFu) << (8 * (7 - b));
    return out;
  }
}

json header_json(const ArtifactHeader& h) {
  json j = {{"section", h.section}, {"n", h.n},       {"N", h.N},
            {"rows", h.rows},       {"cols", h.cols}, {"seed", h.seed},
            {"model", h.model}};
  if (!h.attributes.empty()) j["attributes"] = h.attributes;
  return j;
}

ArtifactHeader header_from_json(const json& j) {
  ArtifactHeader h;
  try {
    h.section = j.at("section").get<std::string>();
    h.n = j.at("n").get<std::size_t>();
    h.N = j.at("N").get<std::size_t>();
    h.rows = j.at("rows").get<std::size_t>();
    h.cols = j.at("cols").get<std::size_t>();
    h.seed = j.value("seed", std::uint64_t{0});
    h.model = j.value("model", std::string{});
    if (j.contains("attributes")) {
      h.attributes = j.at("attributes").get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed artifact header: ") + e.what());
  }
  return h;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line_no) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  std::size_t end = text.find_last_not_of(" \t\r");
  if (begin == std::string::npos) {
    throw FormatError("empty field on line " + std::to_string(line_no));
  }
  const std::string trimmed = text.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
  if (ec != std::errc() || ptr != trimmed.data() + trimmed.size()) {
    throw FormatError("cannot parse '" + trimmed + "' on line " + std::to_string(line_no));
  }
  return value;
}

std::size_t parse_size(const std::string& text) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("bad integer '" + text + "' in CSV header");
  }
  return value;
}

}  // namespace

void write_binary(const std::filesystem::path& path, const Artifact& artifact) {
  check_payload(artifact);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << kMagicPrefix << kFormatVersion << header_json(artifact.header).dump() << '\n';
  const auto& p = artifact.payload;
  std::vector<char> buffer(static_cast<std::size_t>(p.cols()) * 8);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(p(i, j)));
      std::memcpy(buffer.data() + 8 * j, &bits, 8);
    }
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  }
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

Artifact read_binary(const std::filesystem::path& path,
                     std::optional<std::string> expected_section) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagicPrefix, 3) != 0) {
    throw FormatError("'" + path.string() + "' is not an FGF artifact (bad magic)");
  }
  if (magic[3] != '0' + kFormatVersion) {
    throw FormatError("unsupported artifact version '" + std::string(1, magic[3]) +
                      "', this build reads version '" + std::to_string(kFormatVersion) + "'");
  }
  std::string line;
  if (!std::getline(in, line)) throw FormatError("missing artifact header");
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed artifact header: ") + e.what());
  }
  Artifact artifact{header_from_json(j), {}};
  check_section(artifact.header, expected_section);

  const auto rows = static_cast<Eigen::Index>(artifact.header.rows);
  const auto cols = static_cast<Eigen::Index>(artifact.header.cols);
  artifact.payload.resize(rows, cols);
  std::vector<char> buffer(static_cast<std::size_t>(cols) * 8);
  for (Eigen::Index i = 0; i < rows; ++i) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (in.gcount() != static_cast<std::streamsize>(buffer.size())) {
      throw FormatError("truncated payload in '" + path.string() + "'");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, buffer.data() + 8 * c, 8);
      artifact.payload(i, c) = std::bit_cast<double>(to_little_endian(bits));
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after payload in '" + path.string() + "'");
  }
  return artifact;
}

void write_csv(const std::filesystem::path& path, const Artifact& artifact) {
  check_payload(artifact);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path.string() + "' for writing");
  out << "fgf-" << artifact.header.section << ",v" << kFormatVersion << ','
      << artifact.header.n << ',' << artifact.header.N << '\n';
  char buf[32];
  const auto& p = artifact.payload;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw FormatError("write to '" + path.string() + "' failed");
}

Artifact read_csv(const std::filesystem::path& path,
                  std::optional<std::string> expected_section) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  Artifact artifact;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool has_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line_no == 1 && line.rfind("fgf-", 0) == 0) {
      const auto fields = split(line, ',');
      if (fields.size() != 4) throw FormatError("CSV header must be fgf-<section>,v1,n,N");
      artifact.header.section = fields[0].substr(4);
      const std::string expected_version = "v" + std::to_string(kFormatVersion);
      if (fields[1] != expected_version) {
        throw FormatError("unsupported CSV version '" + fields[1] + "', expected '" +
                          expected_version + "'");
      }
      artifact.header.n = parse_size(fields[2]);
      artifact.header.N = parse_size(fields[3]);
      has_header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& field : split(line, ',')) row.push_back(parse_double(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("ragged CSV row on line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (has_header) {
    check_section(artifact.header, expected_section);
  } else if (expected_section) {
    artifact.header.section = *expected_section;
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
  artifact.payload.resize(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      artifact.payload(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  artifact.header.rows = static_cast<std::size_t>(r);
  artifact.header.cols = static_cast<std::size_t>(c);
  return artifact;
}

void write_artifact(const std::filesystem::path& path, const Artifact& artifact) {
  if (path.extension() == ".csv") {
    write_csv(path, artifact);
  } else {
    write_binary(path, artifact);
  }
}

Artifact read_artifact(const std::filesystem::path& path,
                       std::optional<std::string> expected_section) {
  return path.extension() == ".csv" ? read_csv(path, std::move(expected_section))
                                    : read_binary(path, std::move(expected_section));
}

Artifact make_artifact(std::string section, const Grid& grid, Eigen::MatrixXd payload,
                       std::string model, std::uint64_t seed) {
  Artifact a;
  a.header.section = std::move(section);
  a.header.n = grid.dim();
  a.header.N = grid.points_per_axis();
  a.header.rows = static_cast<std::size_t>(payload.rows());
  a.header.cols = static_cast<std::size_t>(payload.cols());
  a.header.seed = seed;
  a.header.model = std::move(model);
  a.payload = std::move(payload);
  return a;
}

Artifact samples_artifact(const FieldSamples& samples, std::string model) {
  Artifact a = make_artifact("smp", samples.grid, samples.data, std::move(model),
                             samples.meta.seed);
  a.header.attributes = {{"generator", samples.meta.generator},
                         {"basis", samples.meta.basis},
                         {"truncation", std::to_string(samples.meta.truncation)}};
  return a;
}

Grid grid_of(const ArtifactHeader& header) {
  if (header.n == 0 || header.N == 0) {
    throw FormatError("artifact does not name its grid (n, N)");
  }
  return Grid(header.n, header.N);
}

FieldSamples samples_from_artifact(const Artifact& artifact) {
  if (artifact.header.section != "smp") {
    throw FormatError("expected section 'smp', got '" + artifact.header.section + "'");
  }
  Grid grid = grid_of(artifact.header);
  if (static_cast<std::size_t>(artifact.payload.cols()) != grid.size()) {
    throw FormatError("sample width does not match the grid");
  }
  SampleMeta meta;
  const auto& attrs = artifact.header.attributes;
  if (auto it = attrs.find("generator"); it != attrs.end()) meta.generator = it->second;
  if (auto it = attrs.find("basis"); it != attrs.end()) meta.basis = it->second;
  if (auto it = attrs.find("truncation"); it != attrs.end()) {
    meta.truncation = parse_size(it->second);
  }
  meta.seed = artifact.header.seed;
  return FieldSamples{std::move(grid), artifact.payload, std::move(meta)};
}

}  // namespace fgf::io
