#include "radnls/report.hpp"

#include "radnls/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace radnls {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_string(std::ostringstream& os, const std::string& s) {
  os << Json(s).dump();
}

void dump_value(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad;
        dump_string(os, key);
        os << ": ";
        dump_value(os, value, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        dump_value(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_number(x) : "null");
      return;
    }
    default: os << j.dump(); return;
  }
}

} // namespace

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_value(os, j, 0);
  return os.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_file(path)); }

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void CsvTable::add(std::string name, std::vector<double> column) {
  if (!columns.empty() && column.size() != columns.front().size())
    throw Error("csv column '" + name + "' has mismatched length");
  header.push_back(std::move(name));
  columns.push_back(std::move(column));
}

std::string CsvTable::render() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      os << (c ? "," : "") << format_number(columns[c][r]);
    os << "\n";
  }
  return os.str();
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

} // namespace

std::string loglog_svg(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<PlotSeries>& series) {
  constexpr double W = 640, H = 420, L = 80, R = 160, T = 40, B = 60;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      xlo = std::min(xlo, std::log10(s.x[i]));
      xhi = std::max(xhi, std::log10(s.x[i]));
      ylo = std::min(ylo, std::log10(s.y[i]));
      yhi = std::max(yhi, std::log10(s.y[i]));
    }
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  if (xhi - xlo < 1e-12) xlo -= 0.5, xhi += 0.5;
  if (yhi - ylo < 1e-12) ylo -= 0.5, yhi += 0.5;
  const double pw = W - L - R, ph = H - T - B;
  auto px = [&](double x) { return L + (std::log10(x) - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double y) { return T + (1.0 - (std::log10(y) - ylo) / (yhi - ylo)) * ph; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
     << escape_xml(title) << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xlo)); d <= static_cast<int>(std::floor(xhi)); ++d) {
    const double x = L + (d - xlo) / (xhi - xlo) * pw;
    os << "<line x1=\"" << fixed(x) << "\" y1=\"" << T + ph << "\" x2=\"" << fixed(x) << "\" y2=\""
       << T + ph + 5 << "\" stroke=\"black\"/><text x=\"" << fixed(x) << "\" y=\"" << T + ph + 18
       << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ylo)); d <= static_cast<int>(std::floor(yhi)); ++d) {
    const double y = T + (1.0 - (d - ylo) / (yhi - ylo)) * ph;
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << fixed(y) << "\" x2=\"" << L << "\" y2=\""
       << fixed(y) << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << fixed(y + 4)
       << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  os << "<text x=\"" << fixed(L + pw / 2) << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">"
     << escape_xml(xlabel) << "</text>\n";
  os << "<text x=\"18\" y=\"" << fixed(T + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << fixed(T + ph / 2) << ")\">" << escape_xml(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 6];
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      pts << fixed(px(s.x[i])) << "," << fixed(py(s.y[i])) << " ";
      os << "<circle cx=\"" << fixed(px(s.x[i])) << "\" cy=\"" << fixed(py(s.y[i]))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    if (!s.markers_only)
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << pts.str() << "\"/>\n";
    const double ly = T + 16.0 * static_cast<double>(k) + 10.0;
    os << "<rect x=\"" << W - R + 12 << "\" y=\"" << fixed(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
       << color << "\"/><text x=\"" << W - R + 28 << "\" y=\"" << fixed(ly + 1) << "\">"
       << escape_xml(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

} // namespace radnls
