#pragma once
#include "spdcomb/interference.hpp"
#include "spdcomb/types.hpp"

namespace spdcomb {

/// Gaussian resolution of the measurement chain.  A zero width is the
/// identity response on that axis.
struct InstrumentResponse {
  double spectral_fwhm_um = 3e-4;
  double angular_fwhm_deg = 0.05;
};

/// Normalized Gaussian kernel sampled at integer offsets, truncated at
/// +/- 4 sigma (radius ceil(4 sigma)) and renormalized to unit sum.
/// sigma_steps is the standard deviation in grid steps.
Arrayd gaussian_kernel(double sigma_steps);

/// Discrete convolution along one axis; near the edges the kernel is
/// renormalized over the overlapping support, so a constant signal stays
/// constant.  sigma_steps <= 0 returns the input unchanged.
Arrayd convolve_axis(const Arrayd& y, double sigma_steps);

/// Spectral response applied to a spectrum (requires a uniform axis).
Spectrum convolve_spectrum(const Spectrum& s, const InstrumentResponse& r);

/// Separable response applied to a map: wavelength axis first, then angle.
AngularMap convolve_map(const AngularMap& m, const InstrumentResponse& r);

/// Scale so the maximum equals 1.  Throws InvalidInput when max <= 0.
Spectrum normalize_max(const Spectrum& s);

/// Uniform step of a monotone axis; throws InvalidInput when steps deviate
/// by more than 1e-9 relative.
double uniform_step(const Arrayd& axis);

}  // namespace spdcomb
