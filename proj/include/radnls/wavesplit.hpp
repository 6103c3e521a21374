#pragma once

// Incoming/outgoing decomposition of radial data on R^3.
//
// With J(s) = int_0^{pi/2} exp(2 pi i s sin t) cos t dt and
// K(s) = chi_{>=2}(s) * i / (2 pi s), the components of f are
//
//   f_out(r) = r^{-beta} int (J(rho r) - K(rho r)) rho^{2-alpha} Ff(rho) drho,
//   f_in(r)  = r^{-beta} int (J(-rho r) + K(rho r)) rho^{2-alpha} Ff(rho) drho,
//
// where Ff is the deformed transform. Summing the two kernels gives
// 2 sin(2 pi s) / (2 pi s), so f_out + f_in = c f with c = 1/(2 pi) in this
// radial normalization. The constant is measured once and folded into both
// kernels, which makes the components an exact splitting of f.
//
// On the grid the rho-integral is a trapezoid sum over the conjugate grid,
// s = rho_j r_m = j m / (2n). Writing the kernel as
//   (J - K)(s) = [sin 2 pi s + i (chi_{<=2}(s) - cos 2 pi s)] / (2 pi s)
// splits the sum into a sine sum, a cosine sum and a windowed prefix sum,
// all O(n log n). kernels::component_quadrature keeps the direct O(n^2)
// quadrature of the same sum as the reference.

#include "radnls/grid.hpp"
#include "radnls/kernels.hpp"
#include "radnls/transforms.hpp"

#include <functional>
#include <optional>

namespace radnls {

using kernels::Direction;

/// J(s) in closed form, (e^{2 pi i s} - 1) / (2 pi i s), stable near s = 0.
cplx kernel_J(double s);

/// J(s) by adaptive Gauss-Kronrod quadrature of the defining theta-integral.
cplx kernel_J_quadrature(double s);

/// K(s) = chi_{>=2}(s) * i / (2 pi s) in dimension three. Requires s >= 0.
cplx kernel_K(double s);

/// Constant c in f_out + f_in = c f for the uncalibrated kernels, measured by
/// the direct quadrature on a Gaussian. Computed once per process.
double calibration_constant();

/// Optional spectral mask m(rho) inserted into the component integral.
using SpectralMask = std::function<double(double)>;

/// Mask sum_{k=k_lo}^{k_hi} chi_{2^k}(rho).
SpectralMask band_mask(int k_lo, int k_hi);

struct SplitOutput {
  RadialField out;
  RadialField in_;
  double reconstruction_error = 0.0;  ///< ||out + in_ - f|| / ||f||
  double spectral_tail = 0.0;         ///< spectral mass above rho_max/2 over the data mass
};

/// Outgoing and incoming components computed together (shared transforms).
SplitOutput wave_components(const RadialField& f, const DecompositionParams& p,
                            const SpectralMask& mask = {});

RadialField outgoing_component(const RadialField& f, const DecompositionParams& p);
RadialField incoming_component(const RadialField& f, const DecompositionParams& p);

/// Frequency-restricted component: the band mask for k_lo..k_hi in the integral.
RadialField banded_component(const RadialField& f, int k_lo, int k_hi, Direction dir,
                             const DecompositionParams& p);

/// Same components by the direct O(n^2) quadrature (reference path).
RadialField component_reference(const RadialField& f, Direction dir,
                                const DecompositionParams& p, const SpectralMask& mask = {});

struct BandRemainder {
  RadialField h;          ///< h_k
  RadialField projected;  ///< P_{2^k}(chi_{>=1} f)
  double ratio = 0.0;     ///< ||h_k||_{H^2} / ||P_{2^k} chi_{>=1} f||_{L^2}
};

/// h_k = (P_{2^k} chi_{>=1} f)_dir - (P_{2^k} chi_{>=1} f)_{dir, k-1..k+1}.
BandRemainder band_remainder(const RadialField& f, int k, const DecompositionParams& p,
                             Direction dir = Direction::out);

/// Modified components f_+ (out) and f_- (in_):
///   f_+ = 1/2 P_{<=1} f + 1/2 P_{>=1} chi_{<=eps0} f + (P_{>=1} chi_{>=eps0} f)_out.
SplitOutput modified_components(const RadialField& f, const DecompositionParams& p);

/// ||P_{>=N} chi_{>=1} f||_{H^{s0}} for one dyadic N.
double high_tail_norm(const RadialField& f, double N, double s0);

/// Smallest dyadic N with ||P_{>=N} chi_{>=1} f||_{H^{s0}} <= delta0.
/// Throws InfeasibleError when even the largest dyadic N <= rho_max misses.
double choose_N(const RadialField& f, const DecompositionParams& p);

struct DataSplit {
  RadialField v0;
  RadialField w0;
  double N = 1.0;
  double tail_H_s0 = 0.0;  ///< ||P_{>=N} chi_{>=1} f||_{H^{s0}}
  double w0_hdot1 = 0.0;   ///< ||w0||_{Hdot^1}
};

/// v0 = (P_{>=N} chi_{>=1} f)_out and
/// w0 = 1/2 P_{<=1} f + 1/2 P_{>=1} chi_{<=1} f + (P_{1<=.<=N} chi_{>=1} f)_out,
/// with N from choose_N, or the given N when supplied. Requires epsilon0 = 1.
DataSplit split_initial_data(const RadialField& f, const DecompositionParams& p,
                             std::optional<double> N = std::nullopt);

} // namespace radnls
