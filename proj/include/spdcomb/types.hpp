#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spdcomb {

inline constexpr std::string_view kVersion = "0.1.0";

using Arrayd = Eigen::ArrayXd;
using Array2Dd = Eigen::ArrayXXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
/// 2*sqrt(2*ln 2): ratio between FWHM and sigma of a Gaussian.
inline constexpr double kFwhmPerSigma = 2.3548200450309493;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

// --- error hierarchy -------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Arguments outside the documented domain of a function.
struct InvalidInput : Error {
  using Error::Error;
};

/// Not enough samples/peaks to compute the requested statistic.
struct InsufficientData : Error {
  using Error::Error;
};

/// Nonlinear fit did not converge.
struct FitFailure : Error {
  using Error::Error;
};

/// Correlation of a zero-variance signal.
struct UndefinedCorrelation : Error {
  using Error::Error;
};

/// Malformed input file (JSON/CSV).
struct ParseError : Error {
  using Error::Error;
};

// --- warning channel -------------------------------------------------------
//
// Non-fatal diagnostics (e.g. a wavelength outside the fitted range of the
// dispersion model) go through a process-global handler.  The default handler
// prints each warning category to stderr once; tests may install their own.

using WarningHandler = std::function<void(const std::string& category, const std::string& message)>;

/// Replace the warning handler; returns the previous one.  Pass nullptr to
/// restore the default (deduplicated stderr) handler.
WarningHandler set_warning_handler(WarningHandler handler);

/// Silence / restore the default handler (used by --quiet).
void set_warnings_quiet(bool quiet);

/// Forget which categories have already been printed.
void reset_warning_dedup();

void emit_warning(const std::string& category, const std::string& message);

}  // namespace spdcomb
