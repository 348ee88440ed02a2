#pragma once
#include <string>

#include "spdcomb/dispersion.hpp"
#include "spdcomb/superlattice.hpp"
#include "spdcomb/types.hpp"

namespace spdcomb {

/// sin(x)/x with a series branch near 0.
double sinc(double x);

/// Longitudinal phase mismatch k_pz - k_sz - k_iz for a signal detected at an
/// external angle theta_ext (idler balances the transverse momentum).
struct PhaseMismatch {
  double delta_k = 0;      // rad/um; positive at the collinear QPM point
  bool evanescent = false; // idler cannot carry the transverse momentum
};

/// Per-wavelength factors reused across detection angles.
struct MismatchContext {
  double k_p = 0, k_s = 0, k_i = 0;
  double n_s = 0;  // signal index, for Snell refraction of theta_ext
};

MismatchContext make_mismatch_context(const SellmeierModel& m, double lambda_s_um,
                                      double lambda_p_um, double temperature_c);
PhaseMismatch eval_mismatch(const MismatchContext& ctx, double theta_ext_deg);
PhaseMismatch phase_mismatch(const SellmeierModel& m, double lambda_s_um,
                             double theta_ext_deg, double lambda_p_um,
                             double temperature_c);

/// Interference amplitude A = sum_n chi_n l_n sinc(D_n/2) e^{i(phi_n + D_n/2)},
/// D_n = l_n delta_k, phi_n the phase accumulated before element n.
/// Direct per-element sum.
Complex amplitude_naive(const DomainSequence& seq, double delta_k);

/// Same amplitude via a closed-form geometric sum per stack (one term per
/// stack/gap instead of per domain).  Falls back to the direct stack sum when
/// the geometric ratio degenerates (|1 - r| < 1e-6).
Complex amplitude_fast(const DesignSpec& d, double delta_k);

/// Midpoint-rule quadrature of the defining integral
/// A = integral chi(z) e^{i z delta_k} dz, steps_per_domain >= 4.
Complex amplitude_quadrature(const DomainSequence& seq, double delta_k,
                             int steps_per_domain);

/// |A|^2 / l^2, clamped to 1 against last-ulp overshoot.
double intensity(Complex amplitude, double total_length_um);

struct SpectrumMeta {
  std::string channel = "signal";  // "signal" or "idler"
  double lambda_p_um = 0;
  double temperature_c = 0;
  double theta_ext_deg = 0;
  bool convolved = false;
};

/// Intensity sampled on a monotone wavelength axis.
struct Spectrum {
  Arrayd wavelength_um;
  Arrayd intensity;
  SpectrumMeta meta;
};

/// Intensity over wavelength (rows) x external angle (columns).
struct AngularMap {
  Arrayd wavelength_um;
  Arrayd theta_deg;
  Array2Dd intensity;
  SpectrumMeta meta;
};

/// Uniform grid [min, max] with the given step (max included when it falls on
/// the lattice within 1e-6 step).  When min is an integer multiple of step the
/// points are generated as (k0 + i) * step, which makes symmetric grids exact
/// (e.g. theta = 0 and +/- mirror pairs are bitwise exact).
Arrayd linear_grid(double min, double max, double step);

/// Collinear-geometry emission spectrum of a design at a fixed external angle.
Spectrum compute_spectrum(const DesignSpec& d, const SellmeierModel& m,
                          const Arrayd& lambda_grid, double theta_ext_deg,
                          double lambda_p_um, double temperature_c, int threads = 1);

/// Wavelength-angle emission map.  The theta = 0 column reproduces
/// compute_spectrum bitwise.
AngularMap compute_map(const DesignSpec& d, const SellmeierModel& m,
                       const Arrayd& lambda_grid, const Arrayd& theta_grid,
                       double lambda_p_um, double temperature_c, int threads = 1);

}  // namespace spdcomb
