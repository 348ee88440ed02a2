#include "spdcomb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spdcomb {
namespace {

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2); falls back to the
// middle sample when the three points are not concave.  Handles non-uniform
// spacing (needed for remapped axes).
void refine_parabolic(double x0, double y0, double x1, double y1, double x2, double y2,
                      double& x_out, double& y_out) {
  const double d1 = x1 - x0;
  const double d2 = x2 - x1;
  const double u = y0 - y1;
  const double v = y2 - y1;
  const double denom = d1 * d2 * (d1 + d2);
  x_out = x1;
  y_out = y1;
  if (denom <= 0) return;
  const double a = (u * d2 + v * d1) / denom;
  if (!(a < 0)) return;
  const double b = v / d2 - a * d2;
  const double shift = -b / (2.0 * a);
  if (std::abs(shift) > std::max(d1, d2)) return;
  x_out = x1 + shift;
  y_out = y1 - b * b / (4.0 * a);
}

double interp_linear(const Arrayd& x, const Arrayd& y, double xq, Index& hint) {
  while (hint + 2 < x.size() && x[hint + 1] < xq) ++hint;
  const double t = (xq - x[hint]) / (x[hint + 1] - x[hint]);
  return y[hint] + t * (y[hint + 1] - y[hint]);
}

}  // namespace

std::vector<Peak> find_peaks(const Spectrum& s, const PeakThresholds& t) {
  const Arrayd& y = s.intensity;
  const Arrayd& x = s.wavelength_um;
  if (y.size() < 3) throw InvalidInput("peak search needs at least 3 samples");
  if (x.size() != y.size()) throw InvalidInput("axis/intensity size mismatch");
  const double y_max = y.maxCoeff();
  std::vector<Peak> peaks;
  if (!(y_max > 0)) return peaks;
  const double min_height = t.min_height_frac * y_max;
  const double min_prom = t.min_prominence_frac * y_max;
  for (Index i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
    if (y[i] < min_height) continue;
    // prominence: lowest descent before meeting a higher sample, on each side
    double left_min = y[i];
    for (Index j = i - 1; j >= 0; --j) {
      if (y[j] > y[i]) break;
      left_min = std::min(left_min, y[j]);
      if (j == 0) break;
    }
    double right_min = y[i];
    for (Index j = i + 1; j < y.size(); ++j) {
      if (y[j] > y[i]) break;
      right_min = std::min(right_min, y[j]);
    }
    const double prom = y[i] - std::max(left_min, right_min);
    if (prom < min_prom) continue;
    Peak p;
    refine_parabolic(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1],
                     p.wavelength_um, p.height);
    p.prominence = prom;
    peaks.push_back(p);
  }
  return peaks;
}

double mean_peak_spacing(const std::vector<Peak>& peaks) {
  if (peaks.size() < 2)
    throw InsufficientData("peak spacing needs >= 2 peaks, got " + std::to_string(peaks.size()));
  return (peaks.back().wavelength_um - peaks.front().wavelength_um) /
         static_cast<double>(peaks.size() - 1);
}

double median_peak_spacing(const std::vector<Peak>& peaks) {
  if (peaks.size() < 2)
    throw InsufficientData("peak spacing needs >= 2 peaks, got " + std::to_string(peaks.size()));
  std::vector<double> d(peaks.size() - 1);
  for (size_t i = 0; i + 1 < peaks.size(); ++i)
    d[i] = peaks[i + 1].wavelength_um - peaks[i].wavelength_um;
  std::sort(d.begin(), d.end());
  const size_t n = d.size();
  return (n % 2 == 1) ? d[n / 2] : 0.5 * (d[n / 2 - 1] + d[n / 2]);
}

EnvelopeFit fit_gaussian(const Arrayd& x, const Arrayd& y) {
  if (x.size() != y.size()) throw InvalidInput("x/y size mismatch");
  const Index n = x.size();
  if (n < 4)
    throw InsufficientData("Gaussian fit needs >= 4 points, got " + std::to_string(n));

  // moment-based start values, weighting by the (nonnegative) heights
  const Arrayd w = y.max(0.0);
  const double w_sum = w.sum();
  if (!(w_sum > 0)) throw InvalidInput("Gaussian fit needs positive heights");
  double mu = (x * w).sum() / w_sum;
  double var = ((x - mu).square() * w).sum() / w_sum;
  const double x_span = x.maxCoeff() - x.minCoeff();
  if (!(x_span > 0)) throw InvalidInput("Gaussian fit needs a spread of x values");
  double sig = std::sqrt(var);
  if (!(sig > 0)) sig = x_span / static_cast<double>(n);
  Eigen::Vector3d p(y.maxCoeff(), mu, sig);

  Eigen::VectorXd r(n);
  Eigen::MatrixXd J(n, 3);
  auto eval = [&](const Eigen::Vector3d& q, Eigen::VectorXd& res) {
    for (Index i = 0; i < n; ++i) {
      const double u = (x[i] - q[1]) / q[2];
      res[i] = q[0] * std::exp(-0.5 * u * u) - y[i];
    }
    return 0.5 * res.squaredNorm();
  };
  auto jacobian = [&](const Eigen::Vector3d& q) {
    for (Index i = 0; i < n; ++i) {
      const double u = (x[i] - q[1]) / q[2];
      const double e = std::exp(-0.5 * u * u);
      J(i, 0) = e;
      J(i, 1) = q[0] * e * u / q[2];
      J(i, 2) = q[0] * e * u * u / q[2];
    }
  };

  // Converged when the gradient is numerically zero, or when the remaining
  // quadratic-model improvement (Newton decrement) is below the floating-point
  // resolution of the cost itself — beyond that no descent step can register.
  auto at_optimum = [](const Eigen::Vector3d& grad, const Eigen::Matrix3d& h, double cost) {
    if (grad.lpNorm<Eigen::Infinity>() < 1e-10) return true;
    const double decrement = 0.5 * grad.dot(h.ldlt().solve(grad));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    return decrement >= 0 && decrement <= 64.0 * eps * std::max(cost, 1e-300);
  };

  double cost = eval(p, r);
  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    jacobian(p);
    const Eigen::Vector3d grad = J.transpose() * r;
    const Eigen::Matrix3d h = J.transpose() * J;
    if (at_optimum(grad, h, cost)) {
      converged = true;
      break;
    }
    bool stepped = false;
    Eigen::VectorXd r_try(n);
    for (int tries = 0; tries < 40; ++tries) {
      Eigen::Matrix3d damped = h;
      damped.diagonal() += lambda * h.diagonal().cwiseMax(1e-30);
      const Eigen::Vector3d step = damped.ldlt().solve(-grad);
      const Eigen::Vector3d p_try = p + step;
      if (p_try[2] != 0) {
        const double cost_try = eval(p_try, r_try);
        if (cost_try < cost) {
          p = p_try;
          cost = cost_try;
          r = r_try;
          lambda = std::max(lambda / 3.0, 1e-12);
          stepped = true;
          break;
        }
      }
      lambda *= 10.0;
      if (lambda > 1e14) break;
    }
    if (!stepped) break;  // no step can lower the cost any further
  }
  if (!converged) {
    jacobian(p);
    const Eigen::Vector3d grad = J.transpose() * r;
    if (!at_optimum(grad, J.transpose() * J, cost)) {
      std::ostringstream os;
      os << "Gaussian fit did not converge (gradient " << grad.lpNorm<Eigen::Infinity>()
         << ", rms " << std::sqrt(r.squaredNorm() / n) << ")";
      throw FitFailure(os.str());
    }
  }

  EnvelopeFit f;
  f.amplitude = p[0];
  f.center_um = p[1];
  f.sigma_um = std::abs(p[2]);
  f.fwhm_um = kFwhmPerSigma * f.sigma_um;
  f.residual_rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  return f;
}

EnvelopeFit fit_envelope(const std::vector<Peak>& peaks) {
  if (peaks.size() < 4)
    throw InsufficientData("envelope fit needs >= 4 peaks, got " + std::to_string(peaks.size()));
  Arrayd x(peaks.size()), y(peaks.size());
  for (size_t i = 0; i < peaks.size(); ++i) {
    x[i] = peaks[i].wavelength_um;
    y[i] = peaks[i].height;
  }
  return fit_gaussian(x, y);
}

double spcc(const Spectrum& a, const Spectrum& b) {
  const Index na = a.wavelength_um.size(), nb = b.wavelength_um.size();
  if (na < 2 || nb < 2) throw InvalidInput("correlation needs at least 2 samples per spectrum");
  for (Index i = 1; i < na; ++i)
    if (!(a.wavelength_um[i] > a.wavelength_um[i - 1]))
      throw InvalidInput("first spectrum axis must increase strictly");
  for (Index i = 1; i < nb; ++i)
    if (!(b.wavelength_um[i] > b.wavelength_um[i - 1]))
      throw InvalidInput("second spectrum axis must increase strictly");

  const double lo = std::max(a.wavelength_um[0], b.wavelength_um[0]);
  const double hi = std::min(a.wavelength_um[na - 1], b.wavelength_um[nb - 1]);
  std::vector<double> u, v;
  Index hint = 0;
  for (Index i = 0; i < na; ++i) {
    const double xq = a.wavelength_um[i];
    if (xq < lo || xq > hi) continue;
    u.push_back(a.intensity[i]);
    v.push_back(interp_linear(b.wavelength_um, b.intensity, xq, hint));
  }
  if (u.size() < 10) {
    std::ostringstream os;
    os << "overlapping support has " << u.size() << " samples; >= 10 required";
    throw InvalidInput(os.str());
  }
  const double n = static_cast<double>(u.size());
  double mu = 0, mv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suv = 0, suu = 0, svv = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    const double du = u[i] - mu, dv = v[i] - mv;
    suv += du * dv;
    suu += du * du;
    svv += dv * dv;
  }
  if (!(suu > 0) || !(svv > 0))
    throw UndefinedCorrelation("correlation undefined for a zero-variance spectrum");
  return std::clamp(suv / std::sqrt(suu * svv), -1.0, 1.0);
}

Spectrum to_idler(const Spectrum& s, double lambda_p_um, bool apply_jacobian) {
  const Index n = s.wavelength_um.size();
  if (n == 0) throw InvalidInput("empty spectrum");
  if (!(lambda_p_um > 0)) throw InvalidInput("pump wavelength must be positive");
  for (Index i = 0; i < n; ++i) {
    if (!(s.wavelength_um[i] > lambda_p_um)) {
      std::ostringstream os;
      os << "axis value " << s.wavelength_um[i]
         << " um not above the pump wavelength " << lambda_p_um << " um";
      throw InvalidInput(os.str());
    }
  }
  Spectrum out;
  out.wavelength_um.resize(n);
  out.intensity.resize(n);
  out.meta = s.meta;
  out.meta.channel = (s.meta.channel == "idler") ? "signal" : "idler";
  for (Index i = 0; i < n; ++i) {
    const Index j = n - 1 - i;  // conjugate axis runs the other way
    const double ls = s.wavelength_um[j];
    const double li = 1.0 / (1.0 / lambda_p_um - 1.0 / ls);
    out.wavelength_um[i] = li;
    out.intensity[i] = apply_jacobian ? s.intensity[j] * (ls / li) * (ls / li)
                                      : s.intensity[j];
  }
  for (Index i = 1; i < n; ++i)
    if (!(out.wavelength_um[i] > out.wavelength_um[i - 1]))
      throw InvalidInput("remapped axis is not strictly increasing");
  return out;
}

CombStats comb_stats(const Spectrum& s, const PeakThresholds& t) {
  CombStats cs;
  cs.peaks = find_peaks(s, t);
  if (cs.peaks.size() >= 2) {
    cs.mean_spacing_um = mean_peak_spacing(cs.peaks);
    cs.median_spacing_um = median_peak_spacing(cs.peaks);
  }
  if (cs.peaks.size() >= 4) {
    try {
      cs.envelope = fit_envelope(cs.peaks);
    } catch (const Error& e) {
      emit_warning("envelope_fit", e.what());
    }
  } else {
    // too few teeth for a peak-based fit (e.g. a gapless design): fit the
    // thresholded samples directly
    const double cut = t.min_height_frac * s.intensity.maxCoeff();
    std::vector<double> xs, ys;
    for (Index i = 0; i < s.intensity.size(); ++i) {
      if (s.intensity[i] >= cut && s.intensity[i] > 0) {
        xs.push_back(s.wavelength_um[i]);
        ys.push_back(s.intensity[i]);
      }
    }
    if (xs.size() >= 4) {
      Arrayd x = Eigen::Map<const Arrayd>(xs.data(), static_cast<Index>(xs.size()));
      Arrayd y = Eigen::Map<const Arrayd>(ys.data(), static_cast<Index>(ys.size()));
      try {
        cs.envelope = fit_gaussian(x, y);
        cs.envelope_from_samples = true;
      } catch (const Error& e) {
        emit_warning("envelope_fit", e.what());
      }
    } else {
      emit_warning("envelope_fit",
                   "envelope not fitted: only " + std::to_string(xs.size()) +
                       " samples above the height threshold");
    }
  }
  return cs;
}

}  // namespace spdcomb
