#include "spdcomb/instrument.hpp"

#include <cmath>
#include <sstream>

namespace spdcomb {

Arrayd gaussian_kernel(double sigma_steps) {
  if (!(sigma_steps > 0)) throw InvalidInput("kernel sigma must be positive");
  const Index radius = static_cast<Index>(std::ceil(4.0 * sigma_steps));
  Arrayd k(2 * radius + 1);
  for (Index i = 0; i < k.size(); ++i) {
    const double x = static_cast<double>(i - radius) / sigma_steps;
    k[i] = std::exp(-0.5 * x * x);
  }
  return k / k.sum();
}

Arrayd convolve_axis(const Arrayd& y, double sigma_steps) {
  if (sigma_steps <= 0) return y;
  const Arrayd k = gaussian_kernel(sigma_steps);
  const Index radius = (k.size() - 1) / 2;
  const Index n = y.size();
  Arrayd out(n);
  for (Index i = 0; i < n; ++i) {
    const Index j0 = std::max<Index>(-radius, -i);
    const Index j1 = std::min<Index>(radius, n - 1 - i);
    double acc = 0.0, weight = 0.0;
    for (Index j = j0; j <= j1; ++j) {
      const double w = k[j + radius];
      acc += w * y[i + j];
      weight += w;
    }
    out[i] = acc / weight;
  }
  return out;
}

double uniform_step(const Arrayd& axis) {
  if (axis.size() < 2) throw InvalidInput("axis needs at least two samples");
  const double step = axis[1] - axis[0];
  if (!(step > 0)) throw InvalidInput("axis must increase strictly");
  for (Index i = 1; i < axis.size(); ++i) {
    const double s = axis[i] - axis[i - 1];
    if (std::abs(s - step) > 1e-9 * std::abs(step)) {
      std::ostringstream os;
      os << "axis step varies (" << step << " vs " << s << " at index " << i
         << "); a uniform grid is required";
      throw InvalidInput(os.str());
    }
  }
  return step;
}

Spectrum convolve_spectrum(const Spectrum& s, const InstrumentResponse& r) {
  Spectrum out = s;
  out.meta.convolved = true;
  if (r.spectral_fwhm_um < 0) throw InvalidInput("spectral FWHM must be >= 0");
  if (r.spectral_fwhm_um == 0) return out;
  const double step = uniform_step(s.wavelength_um);
  out.intensity = convolve_axis(s.intensity, r.spectral_fwhm_um / step / kFwhmPerSigma);
  return out;
}

AngularMap convolve_map(const AngularMap& m, const InstrumentResponse& r) {
  if (r.spectral_fwhm_um < 0 || r.angular_fwhm_deg < 0)
    throw InvalidInput("instrument FWHM must be >= 0");
  AngularMap out = m;
  out.meta.convolved = true;
  if (r.spectral_fwhm_um > 0) {
    const double step = uniform_step(m.wavelength_um);
    const double sigma = r.spectral_fwhm_um / step / kFwhmPerSigma;
    for (Index j = 0; j < out.intensity.cols(); ++j)
      out.intensity.col(j) = convolve_axis(out.intensity.col(j), sigma);
  }
  if (r.angular_fwhm_deg > 0) {
    const double step = uniform_step(m.theta_deg);
    const double sigma = r.angular_fwhm_deg / step / kFwhmPerSigma;
    for (Index i = 0; i < out.intensity.rows(); ++i) {
      Arrayd row = out.intensity.row(i).transpose();
      out.intensity.row(i) = convolve_axis(row, sigma).transpose();
    }
  }
  return out;
}

Spectrum normalize_max(const Spectrum& s) {
  if (s.intensity.size() == 0) throw InvalidInput("empty spectrum");
  const double peak = s.intensity.maxCoeff();
  if (!(peak > 0)) throw InvalidInput("spectrum maximum must be positive to normalize");
  Spectrum out = s;
  out.intensity = s.intensity / peak;
  return out;
}

}  // namespace spdcomb
