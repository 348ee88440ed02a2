#pragma once
#include <string>
#include <vector>

#include "spdcomb/analysis.hpp"
#include "spdcomb/dispersion.hpp"
#include "spdcomb/instrument.hpp"
#include "spdcomb/io.hpp"
#include "spdcomb/superlattice.hpp"

namespace spdcomb {

struct GridRange {
  double min = 0;
  double max = 0;
  double step = 1;
};

/// Fully resolved run parameters.  Defaults reproduce the flagship comb
/// design (16-domain stacks, 85 gaps of 8 stack lengths) at lab conditions.
struct RunConfig {
  DesignSpec design{16, 85, 8, 5.16, 63500.0};
  double pump_wavelength_um = 0.532;
  double temperature_c = 22.0;
  GridRange signal_grid{0.60, 0.70, 2e-5};
  GridRange angle_grid{-2.2, 2.2, 0.01};
  InstrumentResponse instrument{};
  PeakThresholds analysis{};
  SellmeierModel sellmeier = SellmeierModel::mgo_cln_extraordinary();
  double cross_section_wavelength_um = 0.645;
  bool idler_jacobian = false;
  std::string output_dir = "out";
};

/// Strict parse: unknown keys raise ParseError; omitted keys keep defaults.
/// A top-level "manifest" key is ignored so a run manifest can be replayed
/// as a config.  A bare design object (containing "n_nl") is also accepted.
RunConfig config_from_json(const json& j);

/// Complete resolved dump; config_from_json(config_to_json(c)) round-trips.
json config_to_json(const RunConfig& c);

/// Apply one "--set dotted.path=value" assignment onto a JSON document.
/// The value is parsed as JSON when possible, else taken as a string.
void apply_set_override(json& doc, const std::string& assignment);

/// Load config_path (optional, "" for defaults), apply --set overrides in
/// order, parse strictly.
RunConfig load_run_config(const std::string& config_path,
                          const std::vector<std::string>& overrides);

}  // namespace spdcomb
