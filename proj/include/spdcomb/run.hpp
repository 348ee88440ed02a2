#pragma once
#include <optional>
#include <string>
#include <vector>

#include "spdcomb/config.hpp"

namespace spdcomb {

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool quiet = false;
  std::string reference_csv;  // optional two-column spectrum for SPCC
};

/// Collinear pipeline: spectrum -> instrument convolution -> peak
/// normalization -> signal/idler comb statistics.
struct SimulateResult {
  Spectrum raw;
  Spectrum convolved;
  Spectrum normalized;
  Spectrum idler;  // remap of the normalized spectrum
  CombStats signal_stats;
  CombStats idler_stats;
};
SimulateResult simulate_pipeline(const RunConfig& c, int threads);

struct MapResult {
  AngularMap raw;
  AngularMap convolved;
  Index cross_row = 0;  // row nearest cross_section_wavelength_um
};
MapResult map_pipeline(const RunConfig& c, int threads);

/// Throws InvalidInput listing all validation findings for the design.
void require_valid_design(const DesignSpec& d);

int resolve_threads(int requested);

/// Write spectrum.csv, stats.json, run_manifest.json into c.output_dir.
void run_simulate(const RunConfig& c, const RunOptions& o);

/// Write map.csv, map_convolved.csv, map.json, cross_section.csv,
/// run_manifest.json.
void run_map2d(const RunConfig& c, const RunOptions& o);

/// One spectrum CSV per temperature plus sweep_summary.json; needs >= 2
/// temperatures.
void run_sweep_temperature(const RunConfig& c, const std::vector<double>& temperatures_c,
                           const RunOptions& o);

/// Validation report plus derived quantities (stack/gap/design lengths,
/// element counts, phase-matching center and analytic comb predictions).
json validate_report(const DesignSpec& d, const RunConfig& c);

}  // namespace spdcomb
