#include "spdcomb/dispersion.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace spdcomb {
namespace {

double thermal_f(double temperature_c) {
  return (temperature_c - 24.5) * (temperature_c + 570.82);
}

double sellmeier_n2(const SellmeierModel& m, double lambda_um, double f) {
  const double l2 = lambda_um * lambda_um;
  const double c3 = m.a3 + m.b3 * f;
  return m.a1 + m.b1 * f
       + (m.a2 + m.b2 * f) / (l2 - c3 * c3)
       + (m.a4 + m.b4 * f) / (l2 - m.a5 * m.a5)
       - m.a6 * l2;
}

// d(n^2)/dlambda at fixed temperature.
double sellmeier_dn2(const SellmeierModel& m, double lambda_um, double f) {
  const double l2 = lambda_um * lambda_um;
  const double c3 = m.a3 + m.b3 * f;
  const double d1 = l2 - c3 * c3;
  const double d2 = l2 - m.a5 * m.a5;
  return -2.0 * lambda_um * (m.a2 + m.b2 * f) / (d1 * d1)
       - 2.0 * lambda_um * (m.a4 + m.b4 * f) / (d2 * d2)
       - 2.0 * m.a6 * lambda_um;
}

void check_lambda(const SellmeierModel& m, double lambda_um) {
  if (!(lambda_um > 0)) {
    std::ostringstream os;
    os << "wavelength must be positive, got " << lambda_um << " um";
    throw InvalidInput(os.str());
  }
  if (lambda_um < m.valid_min_um || lambda_um > m.valid_max_um) {
    std::ostringstream os;
    os << "wavelength " << lambda_um << " um outside fitted range ["
       << m.valid_min_um << ", " << m.valid_max_um << "] um; extrapolating";
    emit_warning("sellmeier_range", os.str());
  }
}

}  // namespace

SellmeierModel SellmeierModel::mgo_cln_extraordinary() {
  SellmeierModel m;
  m.a1 = 5.756;
  m.a2 = 0.0983;
  m.a3 = 0.2020;
  m.a4 = 189.32;
  m.a5 = 12.52;
  m.a6 = 1.32e-2;
  m.b1 = 2.860e-6;
  m.b2 = 4.700e-8;
  m.b3 = 6.113e-8;
  m.b4 = 1.516e-4;
  m.valid_min_um = 0.5;
  m.valid_max_um = 4.0;
  m.reference = "Gayer et al., Appl. Phys. B 91, 343 (2008), e-ray, 5% MgO:CLN";
  return m;
}

double refractive_index(const SellmeierModel& m, double lambda_um, double temperature_c) {
  check_lambda(m, lambda_um);
  const double n2 = sellmeier_n2(m, lambda_um, thermal_f(temperature_c));
  if (!std::isfinite(n2) || n2 <= 1.0) {
    std::ostringstream os;
    os << "dispersion model breakdown at lambda = " << lambda_um << " um, T = "
       << temperature_c << " C (n^2 = " << n2 << ")";
    throw InvalidInput(os.str());
  }
  return std::sqrt(n2);
}

double wavevector(const SellmeierModel& m, double lambda_um, double temperature_c) {
  return 2.0 * kPi * refractive_index(m, lambda_um, temperature_c) / lambda_um;
}

double group_index(const SellmeierModel& m, double lambda_um, double temperature_c) {
  const double n = refractive_index(m, lambda_um, temperature_c);
  const double dn = sellmeier_dn2(m, lambda_um, thermal_f(temperature_c)) / (2.0 * n);
  return n - lambda_um * dn;
}

double idler_wavelength(double lambda_p_um, double lambda_s_um) {
  if (!(lambda_p_um > 0) || !(lambda_s_um > lambda_p_um) || !(lambda_s_um <= 2.0 * lambda_p_um)) {
    std::ostringstream os;
    os << "signal wavelength " << lambda_s_um
       << " um must lie in (pump, 2*pump] = (" << lambda_p_um << ", "
       << 2.0 * lambda_p_um << "] um";
    throw InvalidInput(os.str());
  }
  return 1.0 / (1.0 / lambda_p_um - 1.0 / lambda_s_um);
}

double internal_angle_deg(const SellmeierModel& m, double theta_ext_deg,
                          double lambda_um, double temperature_c) {
  if (!(std::abs(theta_ext_deg) < 90.0))
    throw InvalidInput("external angle must satisfy |theta| < 90 deg");
  const double n = refractive_index(m, lambda_um, temperature_c);
  return rad2deg(std::asin(std::sin(deg2rad(theta_ext_deg)) / n));
}

double external_angle_deg(const SellmeierModel& m, double theta_int_deg,
                          double lambda_um, double temperature_c) {
  const double n = refractive_index(m, lambda_um, temperature_c);
  const double s = n * std::sin(deg2rad(theta_int_deg));
  if (std::abs(s) > 1.0) {
    std::ostringstream os;
    os << "internal angle " << theta_int_deg
       << " deg exceeds the critical angle; no external ray";
    throw InvalidInput(os.str());
  }
  return rad2deg(std::asin(s));
}

PhotonTriplet PhotonTriplet::from_signal(double lambda_p_um, double lambda_s_um,
                                         double temperature_c) {
  PhotonTriplet t;
  t.lambda_p_um = lambda_p_um;
  t.lambda_s_um = lambda_s_um;
  t.lambda_i_um = idler_wavelength(lambda_p_um, lambda_s_um);
  t.temperature_c = temperature_c;
  return t;
}

bool energy_conserved(const PhotonTriplet& t, double rel_tol) {
  if (!(t.lambda_p_um > 0) || !(t.lambda_s_um > 0) || !(t.lambda_i_um > 0)) return false;
  const double lhs = 1.0 / t.lambda_p_um;
  const double rhs = 1.0 / t.lambda_s_um + 1.0 / t.lambda_i_um;
  return std::abs(lhs - rhs) <= rel_tol * lhs;
}

double collinear_mismatch(const SellmeierModel& m, const PhotonTriplet& t) {
  return wavevector(m, t.lambda_p_um, t.temperature_c)
       - wavevector(m, t.lambda_s_um, t.temperature_c)
       - wavevector(m, t.lambda_i_um, t.temperature_c);
}

double coherence_length_um(const SellmeierModel& m, const PhotonTriplet& t) {
  const double dk = collinear_mismatch(m, t);
  if (dk == 0.0) return std::numeric_limits<double>::infinity();
  return kPi / std::abs(dk);
}

}  // namespace spdcomb
