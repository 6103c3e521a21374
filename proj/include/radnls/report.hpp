#pragma once

// Byte-stable output writers: JSON with numbers pinned to 17 significant
// digits and insertion-ordered keys, CSV, self-contained SVG plots, and
// SHA-256 content hashes for the manifest.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace radnls {

using Json = nlohmann::ordered_json;

/// %.17g; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double x);

/// Serializes with 2-space indentation; doubles via format_number (JSON null
/// for non-finite values).
std::string dump_json(const Json& j);

/// Parses JSON text; throws ConfigError with the parser message on failure.
Json parse_json(const std::string& text);
Json read_json_file(const std::filesystem::path& path);

/// Writes bytes, creating parent directories. Throws Error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

/// Column-major numeric table rendered as CSV.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add(std::string name, std::vector<double> column);
  std::string render() const;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers_only = false;
};

/// Log-log line plot as a standalone SVG document.
std::string loglog_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<PlotSeries>& series);

/// Lower-case hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

} // namespace radnls
