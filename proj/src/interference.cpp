#include "spdcomb/interference.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace spdcomb {
namespace {

// Static partition of [0, n) over up to `threads` workers.  Deterministic:
// the work item for index i does not depend on the worker that runs it.
template <class Fn>
void parallel_for(Index n, int threads, Fn&& fn) {
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (t == 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    const Index begin = n * w / t;
    const Index end = n * (w + 1) / t;
    pool.emplace_back([&, begin, end] {
      try {
        for (Index i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

void check_lambda_grid(const Arrayd& grid, double lambda_p_um) {
  if (grid.size() < 1) throw InvalidInput("empty wavelength grid");
  for (Index i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > lambda_p_um) || !(grid[i] <= 2.0 * lambda_p_um)) {
      std::ostringstream os;
      os << "wavelength grid point " << grid[i] << " um outside (pump, 2*pump] = ("
         << lambda_p_um << ", " << 2.0 * lambda_p_um << "] um";
      throw InvalidInput(os.str());
    }
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidInput("wavelength grid must increase strictly");
  }
}

void check_theta_grid(const Arrayd& grid) {
  if (grid.size() < 1) throw InvalidInput("empty angle grid");
  for (Index i = 0; i < grid.size(); ++i) {
    if (!(std::abs(grid[i]) <= 2.5)) {
      std::ostringstream os;
      os << "angle grid point " << grid[i] << " deg outside [-2.5, 2.5] deg";
      throw InvalidInput(os.str());
    }
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw InvalidInput("angle grid must increase strictly");
  }
}

}  // namespace

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

MismatchContext make_mismatch_context(const SellmeierModel& m, double lambda_s_um,
                                      double lambda_p_um, double temperature_c) {
  if (!(lambda_p_um > 0) || !(lambda_s_um > lambda_p_um) ||
      !(lambda_s_um <= 2.0 * lambda_p_um)) {
    std::ostringstream os;
    os << "signal wavelength " << lambda_s_um << " um outside (pump, 2*pump] for pump "
       << lambda_p_um << " um";
    throw InvalidInput(os.str());
  }
  const double lambda_i = idler_wavelength(lambda_p_um, lambda_s_um);
  MismatchContext ctx;
  ctx.k_p = wavevector(m, lambda_p_um, temperature_c);
  ctx.k_s = wavevector(m, lambda_s_um, temperature_c);
  ctx.k_i = wavevector(m, lambda_i, temperature_c);
  ctx.n_s = refractive_index(m, lambda_s_um, temperature_c);
  return ctx;
}

PhaseMismatch eval_mismatch(const MismatchContext& ctx, double theta_ext_deg) {
  if (!(std::abs(theta_ext_deg) < 10.0))
    throw InvalidInput("external angle must satisfy |theta| < 10 deg");
  const double sin_int = std::sin(deg2rad(theta_ext_deg)) / ctx.n_s;
  const double q = ctx.k_s * sin_int;  // transverse momentum taken by the signal
  if (q == 0.0) return {ctx.k_p - ctx.k_s - ctx.k_i, false};
  if (std::abs(q) > ctx.k_i) return {0.0, true};
  const double k_sz = std::sqrt(ctx.k_s * ctx.k_s - q * q);
  const double k_iz = std::sqrt(ctx.k_i * ctx.k_i - q * q);
  return {ctx.k_p - k_sz - k_iz, false};
}

PhaseMismatch phase_mismatch(const SellmeierModel& m, double lambda_s_um,
                             double theta_ext_deg, double lambda_p_um,
                             double temperature_c) {
  return eval_mismatch(make_mismatch_context(m, lambda_s_um, lambda_p_um, temperature_c),
                       theta_ext_deg);
}

Complex amplitude_naive(const DomainSequence& seq, double delta_k) {
  if (seq.size() == 0) throw InvalidInput("empty domain sequence");
  Complex acc{0.0, 0.0};
  double phase_front = 0.0;
  for (Index i = 0; i < seq.size(); ++i) {
    const double d = seq.length_um[i] * delta_k;
    const double half = 0.5 * d;
    acc += seq.sign[i] * seq.length_um[i] * sinc(half) * std::polar(1.0, phase_front + half);
    phase_front += d;
  }
  return acc;
}

Complex amplitude_fast(const DesignSpec& spec, double delta_k) {
  require_structural(spec);
  const double d = spec.l_domain_um;
  const double gap_len = gap_length_um(spec);
  const double dd = d * delta_k;
  const double half = 0.5 * dd;
  const double base = d * sinc(half);
  const Complex r = -std::polar(1.0, dd);  // per-domain ratio: sign flip + phase

  Complex acc{0.0, 0.0};
  double phase_front = 0.0;
  double stack_start = 1.0;
  for (int s = 0; s <= spec.n_gap; ++s) {
    Complex geom;
    if (dd == 0.0) {
      // all phasors are exactly 1; the alternating stack sum telescopes
      geom = Complex{(spec.n_nl % 2 == 1) ? 1.0 : 0.0, 0.0};
    } else if (std::abs(1.0 - r) < 1e-6) {
      geom = Complex{0.0, 0.0};
      Complex p{1.0, 0.0};
      for (int j = 0; j < spec.n_nl; ++j) {
        geom += p;
        p *= r;
      }
    } else {
      const Complex r_n = std::polar(1.0, spec.n_nl * (dd + kPi));
      geom = (1.0 - r_n) / (1.0 - r);
    }
    acc += stack_start * base * std::polar(1.0, phase_front + half) * geom;
    phase_front += spec.n_nl * dd;

    const double last = (spec.n_nl % 2 == 1) ? stack_start : -stack_start;
    if (s < spec.n_gap) {
      const double gap_sign = -last;
      const double g = gap_len * delta_k;
      acc += gap_sign * gap_len * sinc(0.5 * g) * std::polar(1.0, phase_front + 0.5 * g);
      phase_front += g;
      stack_start = -gap_sign;
    }
  }
  return acc;
}

Complex amplitude_quadrature(const DomainSequence& seq, double delta_k,
                             int steps_per_domain) {
  if (seq.size() == 0) throw InvalidInput("empty domain sequence");
  if (steps_per_domain < 4)
    throw InvalidInput("steps_per_domain must be >= 4, got " + std::to_string(steps_per_domain));
  Complex acc{0.0, 0.0};
  for (Index i = 0; i < seq.size(); ++i) {
    const double h = seq.length_um[i] / steps_per_domain;
    const double z0 = seq.z_front_um[i];
    Complex elem{0.0, 0.0};
    for (int j = 0; j < steps_per_domain; ++j)
      elem += std::polar(1.0, delta_k * (z0 + (j + 0.5) * h));
    acc += seq.sign[i] * h * elem;
  }
  return acc;
}

double intensity(Complex amplitude, double total_length_um) {
  if (!(total_length_um > 0)) throw InvalidInput("total length must be positive");
  double v = std::norm(amplitude) / (total_length_um * total_length_um);
  if (v > 1.0) {
    if (v > 1.0 + 1e-9) throw Error("intensity exceeds 1 beyond rounding; inconsistent inputs");
    v = 1.0;
  }
  return v;
}

Arrayd linear_grid(double min, double max, double step) {
  if (!(step > 0)) throw InvalidInput("grid step must be positive");
  if (!(max > min)) throw InvalidInput("grid max must exceed min");
  const double span = (max - min) / step;
  const Index count = static_cast<Index>(std::floor(span + 1e-6)) + 1;
  Arrayd g(count);
  const double ratio = min / step;
  const double k0 = std::round(ratio);
  if (std::abs(ratio - k0) < 1e-6) {
    for (Index i = 0; i < count; ++i) g[i] = (k0 + static_cast<double>(i)) * step;
  } else {
    for (Index i = 0; i < count; ++i) g[i] = min + static_cast<double>(i) * step;
  }
  return g;
}

Spectrum compute_spectrum(const DesignSpec& d, const SellmeierModel& m,
                          const Arrayd& lambda_grid, double theta_ext_deg,
                          double lambda_p_um, double temperature_c, int threads) {
  require_structural(d);
  check_lambda_grid(lambda_grid, lambda_p_um);
  Spectrum s;
  s.wavelength_um = lambda_grid;
  s.intensity.resize(lambda_grid.size());
  s.meta = {"signal", lambda_p_um, temperature_c, theta_ext_deg, false};
  const double l_total = design_length_um(d);
  parallel_for(lambda_grid.size(), threads, [&](Index i) {
    const auto ctx = make_mismatch_context(m, lambda_grid[i], lambda_p_um, temperature_c);
    const auto pm = eval_mismatch(ctx, theta_ext_deg);
    s.intensity[i] = pm.evanescent ? 0.0 : intensity(amplitude_fast(d, pm.delta_k), l_total);
  });
  return s;
}

AngularMap compute_map(const DesignSpec& d, const SellmeierModel& m,
                       const Arrayd& lambda_grid, const Arrayd& theta_grid,
                       double lambda_p_um, double temperature_c, int threads) {
  require_structural(d);
  check_lambda_grid(lambda_grid, lambda_p_um);
  check_theta_grid(theta_grid);
  AngularMap map;
  map.wavelength_um = lambda_grid;
  map.theta_deg = theta_grid;
  map.intensity.resize(lambda_grid.size(), theta_grid.size());
  map.meta = {"signal", lambda_p_um, temperature_c, 0.0, false};
  const double l_total = design_length_um(d);
  // One work item per wavelength row: the dispersion context is shared by all
  // angles of that row.
  parallel_for(lambda_grid.size(), threads, [&](Index i) {
    const auto ctx = make_mismatch_context(m, lambda_grid[i], lambda_p_um, temperature_c);
    for (Index j = 0; j < theta_grid.size(); ++j) {
      const auto pm = eval_mismatch(ctx, theta_grid[j]);
      map.intensity(i, j) =
          pm.evanescent ? 0.0 : intensity(amplitude_fast(d, pm.delta_k), l_total);
    }
  });
  return map;
}

}  // namespace spdcomb
