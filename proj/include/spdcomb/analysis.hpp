#pragma once
#include <optional>
#include <vector>

#include "spdcomb/interference.hpp"
#include "spdcomb/types.hpp"

namespace spdcomb {

struct Peak {
  double wavelength_um = 0;
  double height = 0;      // refined by a 3-point parabola through the maximum
  double prominence = 0;  // from grid samples
};

struct PeakThresholds {
  double min_height_frac = 0.10;      // of the spectrum maximum
  double min_prominence_frac = 0.05;  // of the spectrum maximum
};

/// Strict local maxima above the height/prominence thresholds, positions
/// refined by a parabola through the three samples around each maximum
/// (exact for quadratic data, also on non-uniform axes).  Sorted by
/// wavelength.  Needs >= 3 samples.
std::vector<Peak> find_peaks(const Spectrum& s, const PeakThresholds& t = {});

/// Mean spacing of consecutive peaks; throws InsufficientData for < 2 peaks.
double mean_peak_spacing(const std::vector<Peak>& peaks);
double median_peak_spacing(const std::vector<Peak>& peaks);

struct EnvelopeFit {
  double amplitude = 0;
  double center_um = 0;
  double sigma_um = 0;
  double fwhm_um = 0;
  double residual_rms = 0;
};

/// Least-squares Gaussian y = A exp(-(x-mu)^2 / (2 sigma^2)) via
/// Levenberg-Marquardt, initialized from weighted moments.  Throws
/// InsufficientData (< 4 points) or FitFailure (no convergence in 200
/// iterations, gradient criterion 1e-10).
EnvelopeFit fit_gaussian(const Arrayd& x, const Arrayd& y);

/// Gaussian envelope through the comb peaks (positions vs heights).
EnvelopeFit fit_envelope(const std::vector<Peak>& peaks);

/// Pearson correlation of two spectra; b is resampled onto a's axis by
/// linear interpolation over the overlapping support (>= 10 samples
/// required, else InvalidInput).  Zero variance -> UndefinedCorrelation.
double spcc(const Spectrum& a, const Spectrum& b);

/// Remap a signal-side spectrum to the idler axis through energy
/// conservation; the axis is re-sorted ascending.  With apply_jacobian the
/// intensity is scaled by (lambda_s / lambda_i)^2 to conserve integrated
/// power under the change of variable.  Axis values must exceed lambda_p
/// (the remap is an involution on that domain).
Spectrum to_idler(const Spectrum& s, double lambda_p_um, bool apply_jacobian = false);

struct CombStats {
  std::vector<Peak> peaks;
  std::optional<double> mean_spacing_um;
  std::optional<double> median_spacing_um;
  std::optional<EnvelopeFit> envelope;
  bool envelope_from_samples = false;  // fallback when < 4 peaks
  std::optional<double> spcc_vs_reference;
};

/// Peak list, spacing and envelope of a (typically convolved, normalized)
/// spectrum.  With fewer than 4 peaks the envelope falls back to a direct
/// Gaussian fit of the samples above the height threshold; a failed fit
/// leaves the envelope empty and warns (category "envelope_fit").
CombStats comb_stats(const Spectrum& s, const PeakThresholds& t = {});

}  // namespace spdcomb
