#include "spdcomb/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

namespace spdcomb {
namespace {

namespace fs = std::filesystem;

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
}

json manifest_json(const RunConfig& c, const std::string& command) {
  json j = config_to_json(c);
  j["manifest"] = {{"artifact_version", std::string(kVersion)}, {"command", command}};
  return j;
}

std::string temp_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

// Predicted collinear phase-matching wavelength: the root of
// delta_k(lambda) = pi / l_domain inside the signal window, if any.
std::optional<double> phase_match_center(const RunConfig& c) {
  const double target = kPi / c.design.l_domain_um;
  auto g = [&](double lambda) {
    const auto t = PhotonTriplet::from_signal(c.pump_wavelength_um, lambda, c.temperature_c);
    return collinear_mismatch(c.sellmeier, t) - target;
  };
  const int n_scan = 200;
  const double lo = c.signal_grid.min, hi = c.signal_grid.max;
  if (!(hi > lo)) return std::nullopt;
  double a = lo, fa;
  try {
    fa = g(a);
  } catch (const Error&) {
    return std::nullopt;
  }
  for (int i = 1; i <= n_scan; ++i) {
    const double b = lo + (hi - lo) * i / n_scan;
    double fb;
    try {
      fb = g(b);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (fa == 0.0) return a;
    if (fa * fb < 0) {
      double x0 = a, x1 = b, f0 = fa;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (x0 + x1);
        const double fm = g(mid);
        if (fm == 0.0) return mid;
        if (f0 * fm < 0)
          x1 = mid;
        else {
          x0 = mid;
          f0 = fm;
        }
      }
      return 0.5 * (x0 + x1);
    }
    a = b;
    fa = fb;
  }
  return std::nullopt;
}

}  // namespace

void require_valid_design(const DesignSpec& d) {
  const auto report = validate_design(d);
  if (report.valid()) return;
  std::ostringstream os;
  os << "design validation failed:";
  for (const auto& v : report.violations) os << "\n  - " << v;
  throw InvalidInput(os.str());
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulateResult simulate_pipeline(const RunConfig& c, int threads) {
  require_valid_design(c.design);
  SimulateResult r;
  const Arrayd grid = linear_grid(c.signal_grid.min, c.signal_grid.max, c.signal_grid.step);
  r.raw = compute_spectrum(c.design, c.sellmeier, grid, 0.0, c.pump_wavelength_um,
                           c.temperature_c, threads);
  r.convolved = convolve_spectrum(r.raw, c.instrument);
  r.normalized = normalize_max(r.convolved);
  r.signal_stats = comb_stats(r.normalized, c.analysis);
  r.idler = to_idler(r.normalized, c.pump_wavelength_um, c.idler_jacobian);
  r.idler_stats = comb_stats(r.idler, c.analysis);
  return r;
}

MapResult map_pipeline(const RunConfig& c, int threads) {
  require_valid_design(c.design);
  MapResult r;
  const Arrayd lgrid = linear_grid(c.signal_grid.min, c.signal_grid.max, c.signal_grid.step);
  const Arrayd tgrid = linear_grid(c.angle_grid.min, c.angle_grid.max, c.angle_grid.step);
  r.raw = compute_map(c.design, c.sellmeier, lgrid, tgrid, c.pump_wavelength_um,
                      c.temperature_c, threads);
  r.convolved = convolve_map(r.raw, c.instrument);
  Index best = 0;
  for (Index i = 1; i < lgrid.size(); ++i)
    if (std::abs(lgrid[i] - c.cross_section_wavelength_um) <
        std::abs(lgrid[best] - c.cross_section_wavelength_um))
      best = i;
  r.cross_row = best;
  return r;
}

void run_simulate(const RunConfig& c, const RunOptions& o) {
  const auto res = simulate_pipeline(c, resolve_threads(o.threads));
  CombStats signal_stats = res.signal_stats;
  if (!o.reference_csv.empty()) {
    const Spectrum ref = read_spectrum_csv(o.reference_csv);
    signal_stats.spcc_vs_reference = spcc(res.normalized, ref);
  }
  ensure_dir(c.output_dir);
  write_spectrum_csv(join_path(c.output_dir, "spectrum.csv"), res.raw, &res.convolved);
  json stats;
  stats["signal"] = stats_to_json(signal_stats);
  stats["idler"] = stats_to_json(res.idler_stats);
  write_json_file(join_path(c.output_dir, "stats.json"), stats);
  write_json_file(join_path(c.output_dir, "run_manifest.json"), manifest_json(c, "simulate"));
}

void run_map2d(const RunConfig& c, const RunOptions& o) {
  const auto res = map_pipeline(c, resolve_threads(o.threads));
  ensure_dir(c.output_dir);
  write_map_csv(join_path(c.output_dir, "map.csv"), res.raw);
  write_map_csv(join_path(c.output_dir, "map_convolved.csv"), res.convolved);
  const Arrayd raw_row = res.raw.intensity.row(res.cross_row).transpose();
  const Arrayd conv_row = res.convolved.intensity.row(res.cross_row).transpose();
  write_cross_section_csv(join_path(c.output_dir, "cross_section.csv"), res.raw.theta_deg,
                          raw_row, &conv_row);
  json sidecar;
  sidecar["design"] = design_to_json(c.design);
  sidecar["pump_wavelength_um"] = c.pump_wavelength_um;
  sidecar["temperature_c"] = c.temperature_c;
  sidecar["wavelength_grid_um"] = {{"min_um", c.signal_grid.min},
                                  {"max_um", c.signal_grid.max},
                                  {"step_um", c.signal_grid.step}};
  sidecar["angle_grid_deg"] = {{"min_deg", c.angle_grid.min},
                               {"max_deg", c.angle_grid.max},
                               {"step_deg", c.angle_grid.step}};
  sidecar["convolution"] = {{"spectral_fwhm_um", c.instrument.spectral_fwhm_um},
                            {"angular_fwhm_deg", c.instrument.angular_fwhm_deg}};
  sidecar["cross_section_wavelength_um"] = res.raw.wavelength_um[res.cross_row];
  sidecar["files"] = {{"map", "map.csv"},
                      {"map_convolved", "map_convolved.csv"},
                      {"cross_section", "cross_section.csv"}};
  write_json_file(join_path(c.output_dir, "map.json"), sidecar);
  write_json_file(join_path(c.output_dir, "run_manifest.json"), manifest_json(c, "map2d"));
}

void run_sweep_temperature(const RunConfig& c, const std::vector<double>& temperatures_c,
                           const RunOptions& o) {
  if (temperatures_c.size() < 2)
    throw InvalidInput("temperature sweep needs >= 2 temperatures, got " +
                       std::to_string(temperatures_c.size()));
  ensure_dir(c.output_dir);
  const int threads = resolve_threads(o.threads);

  json summary;
  summary["temperatures_c"] = temperatures_c;
  json files = json::array();
  std::vector<std::optional<double>> sig_centers, idl_centers;
  for (size_t k = 0; k < temperatures_c.size(); ++k) {
    RunConfig ck = c;
    ck.temperature_c = temperatures_c[k];
    const auto res = simulate_pipeline(ck, threads);
    char name[64];
    std::snprintf(name, sizeof(name), "spectrum_%03zu_T%s.csv", k,
                  temp_label(temperatures_c[k]).c_str());
    write_spectrum_csv(join_path(c.output_dir, name), res.raw, &res.convolved);
    files.push_back(name);
    sig_centers.push_back(res.signal_stats.envelope
                              ? std::optional<double>(res.signal_stats.envelope->center_um)
                              : std::nullopt);
    idl_centers.push_back(res.idler_stats.envelope
                              ? std::optional<double>(res.idler_stats.envelope->center_um)
                              : std::nullopt);
  }
  auto channel_json = [](const std::vector<std::optional<double>>& centers) {
    json c;
    json arr = json::array();
    for (const auto& v : centers) arr.push_back(v ? json(*v) : json(nullptr));
    c["envelope_centers_um"] = arr;
    json shifts = json::array();
    for (size_t k = 0; k + 1 < centers.size(); ++k)
      shifts.push_back(centers[k] && centers[k + 1] ? json(*centers[k + 1] - *centers[k])
                                                    : json(nullptr));
    c["consecutive_shifts_um"] = shifts;
    return c;
  };
  summary["signal"] = channel_json(sig_centers);
  summary["idler"] = channel_json(idl_centers);
  summary["spectra_files"] = files;
  write_json_file(join_path(c.output_dir, "sweep_summary.json"), summary);

  json manifest = manifest_json(c, "sweep-temperature");
  manifest["manifest"]["temperatures_c"] = temperatures_c;
  write_json_file(join_path(c.output_dir, "run_manifest.json"), manifest);
}

json validate_report(const DesignSpec& d, const RunConfig& c) {
  const auto report = validate_design(d);
  json j;
  j["design"] = design_to_json(d);
  j["valid"] = report.valid();
  j["violations"] = report.violations;

  json derived;
  const bool structural_ok =
      d.n_nl >= 1 && d.n_gap >= 0 && d.m_gap >= 1 && d.l_domain_um > 0;
  if (structural_ok) {
    derived["l_stack_um"] = stack_length_um(d);
    derived["l_gap_um"] = d.n_gap > 0 ? json(gap_length_um(d)) : json(nullptr);
    derived["l_design_um"] = design_length_um(d);
    derived["element_count"] = element_count(d);
    derived["domain_count"] = static_cast<Index>(d.n_gap + 1) * d.n_nl;
    derived["gap_count"] = d.n_gap;
    const double super_period = stack_length_um(d) * (1 + d.m_gap);
    derived["super_period_um"] = d.n_gap > 0 ? json(super_period) : json(nullptr);

    RunConfig cc = c;
    cc.design = d;
    const auto center = phase_match_center(cc);
    derived["phase_match_center_um"] = center ? json(*center) : json(nullptr);
    derived["predicted_signal_spacing_um"] = nullptr;
    derived["predicted_signal_envelope_fwhm_um"] = nullptr;
    derived["predicted_idler_spacing_um"] = nullptr;
    derived["predicted_idler_envelope_fwhm_um"] = nullptr;
    if (center) {
      const double ls = *center;
      const double li = idler_wavelength(c.pump_wavelength_um, ls);
      const double dng = group_index(c.sellmeier, ls, c.temperature_c) -
                         group_index(c.sellmeier, li, c.temperature_c);
      if (dng != 0) {
        // sinc^2 half-max at x = 1.3915574; width in delta_k converted via
        // d(delta_k)/d(lambda) = 2 pi (n_gs - n_gi) / lambda^2
        const double fwhm = (2.0 * 1.3915574 / kPi) * ls * ls / (stack_length_um(d) * dng);
        derived["predicted_signal_envelope_fwhm_um"] = fwhm;
        const double jac = (li / ls) * (li / ls);
        derived["predicted_idler_envelope_fwhm_um"] = fwhm * jac;
        if (d.n_gap > 0) {
          const double spacing = ls * ls / (super_period * dng);
          derived["predicted_signal_spacing_um"] = spacing;
          derived["predicted_idler_spacing_um"] = spacing * jac;
        }
      }
    }
  }
  j["derived"] = derived;
  return j;
}

}  // namespace spdcomb
