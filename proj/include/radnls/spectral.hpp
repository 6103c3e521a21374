#pragma once

// Thin wrappers over FFTW's real-to-real transforms, in the index conventions
// used by the radial grid (interior nodes 1..n-1, node 0 and node n vanish).

#include "radnls/grid.hpp"

#include <span>

namespace radnls::spectral {

/// out[j] = sum_{m=1}^{n-1} sin(pi j m / n) in[m] for j = 1..n-1; out[0] = 0.
/// Both spans have length n. in[0] is ignored.
void sine_sum(std::span<const double> in, std::span<double> out);

/// out[m] = sum_{j=1}^{n-1} cos(pi j m / n) in[j] for m = 0..n-1.
/// in[0] is ignored.
void cosine_sum(std::span<const double> in, std::span<double> out);

/// Complex versions (real and imaginary parts transformed independently).
void sine_sum(std::span<const cplx> in, std::span<cplx> out);
void cosine_sum(std::span<const cplx> in, std::span<cplx> out);

} // namespace radnls::spectral
