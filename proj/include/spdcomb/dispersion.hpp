#pragma once
#include <string>

#include "spdcomb/types.hpp"

namespace spdcomb {

/// Temperature-dependent Sellmeier description of one polarization eigenray.
/// n^2 = a1 + b1 f + (a2 + b2 f)/(l^2 - (a3 + b3 f)^2)
///          + (a4 + b4 f)/(l^2 - a5^2) - a6 l^2,
/// with l the vacuum wavelength in um and f = (T - 24.5)(T + 570.82), T in C.
struct SellmeierModel {
  double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
  double valid_min_um = 0.5;
  double valid_max_um = 4.0;
  std::string reference;

  /// Extraordinary ray of 5% MgO-doped congruent LiNbO3
  /// (coefficients of Gayer, Sacks, Galun & Arie, Appl. Phys. B 91, 343 (2008)).
  static SellmeierModel mgo_cln_extraordinary();
};

/// Phase refractive index.  Warns (category "sellmeier_range") outside the
/// fitted wavelength range; throws InvalidInput for lambda <= 0 or when the
/// model produces n^2 <= 1 (evaluation outside its physical domain).
double refractive_index(const SellmeierModel& m, double lambda_um, double temperature_c);

/// Vacuum-wavelength wavevector magnitude inside the medium, rad/um.
double wavevector(const SellmeierModel& m, double lambda_um, double temperature_c);

/// Group index n_g = n - lambda dn/dlambda (analytic derivative).
double group_index(const SellmeierModel& m, double lambda_um, double temperature_c);

/// Idler wavelength from energy conservation 1/lp = 1/ls + 1/li.
/// Requires 0 < lambda_p < lambda_s <= 2 lambda_p.
double idler_wavelength(double lambda_p_um, double lambda_s_um);

/// Internal propagation angle for an external (air-side) angle, via Snell's
/// law at the detected wavelength.  Degrees in, degrees out.
double internal_angle_deg(const SellmeierModel& m, double theta_ext_deg,
                          double lambda_um, double temperature_c);

/// Inverse of internal_angle_deg.  Throws InvalidInput when the internal ray
/// is beyond the critical angle.
double external_angle_deg(const SellmeierModel& m, double theta_int_deg,
                          double lambda_um, double temperature_c);

/// Pump/signal/idler wavelengths tied by energy conservation.
struct PhotonTriplet {
  double lambda_p_um = 0;
  double lambda_s_um = 0;
  double lambda_i_um = 0;
  double temperature_c = 0;

  static PhotonTriplet from_signal(double lambda_p_um, double lambda_s_um,
                                   double temperature_c);
};

/// |1/lp - 1/ls - 1/li| <= rel_tol / lp ?
bool energy_conserved(const PhotonTriplet& t, double rel_tol = 1e-12);

/// Collinear phase mismatch k_p - k_s - k_i of the triplet, rad/um.
double collinear_mismatch(const SellmeierModel& m, const PhotonTriplet& t);

/// pi / |collinear mismatch|.  +inf when exactly phase matched.
double coherence_length_um(const SellmeierModel& m, const PhotonTriplet& t);

}  // namespace spdcomb
