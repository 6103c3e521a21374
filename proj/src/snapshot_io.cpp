#include "radnls/snapshot_io.hpp"

#include "radnls/errors.hpp"
#include "radnls/report.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

namespace radnls {

namespace {

void put(std::string& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out += static_cast<char>((bits >> (8 * b)) & 0xffu);
}

double get(const std::string& in, std::size_t at) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b)
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + b])) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::filesystem::path with_ext(const std::filesystem::path& base, const char* ext) {
  auto p = base;
  p += ext;
  return p;
}

} // namespace

std::string encode_values(const std::vector<cplx>& values) {
  std::string out;
  out.reserve(16 * values.size());
  for (const auto& z : values) {
    put(out, z.real());
    put(out, z.imag());
  }
  return out;
}

std::vector<cplx> decode_values(const std::string& bytes) {
  if (bytes.size() % 16 != 0) throw ConfigError("snapshot payload is not a sequence of pairs");
  std::vector<cplx> v(bytes.size() / 16);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = {get(bytes, 16 * j), get(bytes, 16 * j + 8)};
  return v;
}

std::pair<std::filesystem::path, std::filesystem::path> write_snapshot(
    const std::filesystem::path& base, const RadialField& f, double t, const std::string& role) {
  Json meta;
  meta["n"] = f.grid.n;
  meta["dr"] = f.grid.dr;
  meta["r_max"] = f.grid.r_max;
  meta["t"] = t;
  meta["role"] = role;
  const auto bin = with_ext(base, ".bin"), side = with_ext(base, ".json");
  write_file(bin, encode_values(f.values));
  write_file(side, dump_json(meta));
  return {bin, side};
}

std::pair<std::filesystem::path, std::filesystem::path> write_spectrum(
    const std::filesystem::path& base, const SpectralField& F, double t, const std::string& role) {
  Json meta;
  meta["domain"] = "frequency";
  meta["n"] = F.n;
  meta["drho"] = F.drho();
  meta["rho_max"] = F.rho_max;
  meta["t"] = t;
  meta["role"] = role;
  const auto bin = with_ext(base, ".bin"), side = with_ext(base, ".json");
  write_file(bin, encode_values(F.values));
  write_file(side, dump_json(meta));
  return {bin, side};
}

Snapshot read_snapshot(const std::filesystem::path& base) {
  const auto meta = read_json_file(with_ext(base, ".json"));
  if (meta.contains("domain") && meta["domain"] != "space")
    throw ConfigError("snapshot " + base.string() + " is not a radial field");
  Snapshot s;
  const auto n = meta.at("n").get<std::size_t>();
  RadialGrid g{meta.at("r_max").get<double>(), n, meta.at("dr").get<double>()};
  s.field = RadialField(g, decode_values(read_file(with_ext(base, ".bin"))));
  s.t = meta.at("t").get<double>();
  s.role = meta.at("role").get<std::string>();
  return s;
}

SpectrumSnapshot read_spectrum(const std::filesystem::path& base) {
  const auto meta = read_json_file(with_ext(base, ".json"));
  if (meta.value("domain", std::string()) != "frequency")
    throw ConfigError("snapshot " + base.string() + " is not a spectrum");
  SpectrumSnapshot s;
  s.field.n = meta.at("n").get<std::size_t>();
  s.field.rho_max = meta.at("rho_max").get<double>();
  s.field.values = decode_values(read_file(with_ext(base, ".bin")));
  if (s.field.values.size() != s.field.n) throw ConfigError("spectrum length mismatch");
  s.t = meta.at("t").get<double>();
  s.role = meta.at("role").get<std::string>();
  return s;
}

} // namespace radnls
