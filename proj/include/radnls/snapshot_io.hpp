#pragma once

// Field snapshots: a flat little-endian file of (Re, Im) float64 pairs in node
// order plus a JSON sidecar. Radial fields carry {"n", "dr", "r_max", "t",
// "role"}; spectra add "domain": "frequency" and describe the rho grid.

#include "radnls/grid.hpp"

#include <filesystem>
#include <string>

namespace radnls {

struct Snapshot {
  RadialField field;
  double t = 0.0;
  std::string role;
};

struct SpectrumSnapshot {
  SpectralField field;
  double t = 0.0;
  std::string role;
};

/// Writes <base>.bin and <base>.json. Returns the two paths written.
std::pair<std::filesystem::path, std::filesystem::path> write_snapshot(
    const std::filesystem::path& base, const RadialField& f, double t, const std::string& role);

std::pair<std::filesystem::path, std::filesystem::path> write_spectrum(
    const std::filesystem::path& base, const SpectralField& F, double t, const std::string& role);

/// Reads <base>.bin with its sidecar; bit-exact inverse of write_snapshot.
Snapshot read_snapshot(const std::filesystem::path& base);
SpectrumSnapshot read_spectrum(const std::filesystem::path& base);

/// Raw little-endian (Re, Im) encoding and its inverse.
std::string encode_values(const std::vector<cplx>& values);
std::vector<cplx> decode_values(const std::string& bytes);

} // namespace radnls
