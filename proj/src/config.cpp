#include "spdcomb/config.hpp"

#include <sstream>

namespace spdcomb {
namespace {

double get_number(const json& v, const std::string& context) {
  if (!v.is_number()) throw ParseError(context + " must be a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& context) {
  if (!v.is_boolean()) throw ParseError(context + " must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& context) {
  if (!v.is_string()) throw ParseError(context + " must be a string");
  return v.get<std::string>();
}

GridRange parse_grid(const json& j, GridRange base, const std::string& context,
                     const std::string& unit) {
  if (!j.is_object()) throw ParseError(context + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "min_" + unit)
      base.min = get_number(value, context + "." + key);
    else if (key == "max_" + unit)
      base.max = get_number(value, context + "." + key);
    else if (key == "step_" + unit)
      base.step = get_number(value, context + "." + key);
    else
      throw ParseError("unknown key '" + key + "' in " + context);
  }
  return base;
}

InstrumentResponse parse_instrument(const json& j, InstrumentResponse base) {
  if (!j.is_object()) throw ParseError("instrument must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "spectral_fwhm_um")
      base.spectral_fwhm_um = get_number(value, "instrument.spectral_fwhm_um");
    else if (key == "angular_fwhm_deg")
      base.angular_fwhm_deg = get_number(value, "instrument.angular_fwhm_deg");
    else
      throw ParseError("unknown key '" + key + "' in instrument");
  }
  return base;
}

PeakThresholds parse_analysis(const json& j, PeakThresholds base) {
  if (!j.is_object()) throw ParseError("analysis must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "min_height_frac")
      base.min_height_frac = get_number(value, "analysis.min_height_frac");
    else if (key == "min_prominence_frac")
      base.min_prominence_frac = get_number(value, "analysis.min_prominence_frac");
    else
      throw ParseError("unknown key '" + key + "' in analysis");
  }
  return base;
}

SellmeierModel parse_sellmeier(const json& j, SellmeierModel base) {
  if (!j.is_object()) throw ParseError("sellmeier must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    double* slot = nullptr;
    if (key == "a1") slot = &base.a1;
    else if (key == "a2") slot = &base.a2;
    else if (key == "a3") slot = &base.a3;
    else if (key == "a4") slot = &base.a4;
    else if (key == "a5") slot = &base.a5;
    else if (key == "a6") slot = &base.a6;
    else if (key == "b1") slot = &base.b1;
    else if (key == "b2") slot = &base.b2;
    else if (key == "b3") slot = &base.b3;
    else if (key == "b4") slot = &base.b4;
    else if (key == "valid_min_um") slot = &base.valid_min_um;
    else if (key == "valid_max_um") slot = &base.valid_max_um;
    else if (key == "reference") {
      base.reference = get_string(value, "sellmeier.reference");
      continue;
    } else {
      throw ParseError("unknown key '" + key + "' in sellmeier");
    }
    *slot = get_number(value, "sellmeier." + key);
  }
  return base;
}

}  // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("configuration must be a JSON object");
  RunConfig c;
  if (j.contains("n_nl")) {
    // bare design object (e.g. a preset passed straight to --config)
    c.design = design_from_json(j, c.design, "design");
    return c;
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "design")
      c.design = design_from_json(value, c.design, "design");
    else if (key == "pump_wavelength_um")
      c.pump_wavelength_um = get_number(value, key);
    else if (key == "temperature_c")
      c.temperature_c = get_number(value, key);
    else if (key == "signal_grid")
      c.signal_grid = parse_grid(value, c.signal_grid, "signal_grid", "um");
    else if (key == "angle_grid")
      c.angle_grid = parse_grid(value, c.angle_grid, "angle_grid", "deg");
    else if (key == "instrument")
      c.instrument = parse_instrument(value, c.instrument);
    else if (key == "analysis")
      c.analysis = parse_analysis(value, c.analysis);
    else if (key == "sellmeier")
      c.sellmeier = parse_sellmeier(value, c.sellmeier);
    else if (key == "cross_section_wavelength_um")
      c.cross_section_wavelength_um = get_number(value, key);
    else if (key == "idler_jacobian")
      c.idler_jacobian = get_bool(value, key);
    else if (key == "output_dir")
      c.output_dir = get_string(value, key);
    else if (key == "manifest")
      continue;  // replayed run manifests carry provenance here
    else
      throw ParseError("unknown configuration key '" + key + "'");
  }
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["design"] = design_to_json(c.design);
  j["pump_wavelength_um"] = c.pump_wavelength_um;
  j["temperature_c"] = c.temperature_c;
  j["signal_grid"] = {{"min_um", c.signal_grid.min},
                      {"max_um", c.signal_grid.max},
                      {"step_um", c.signal_grid.step}};
  j["angle_grid"] = {{"min_deg", c.angle_grid.min},
                     {"max_deg", c.angle_grid.max},
                     {"step_deg", c.angle_grid.step}};
  j["instrument"] = {{"spectral_fwhm_um", c.instrument.spectral_fwhm_um},
                     {"angular_fwhm_deg", c.instrument.angular_fwhm_deg}};
  j["analysis"] = {{"min_height_frac", c.analysis.min_height_frac},
                   {"min_prominence_frac", c.analysis.min_prominence_frac}};
  j["sellmeier"] = {{"a1", c.sellmeier.a1}, {"a2", c.sellmeier.a2}, {"a3", c.sellmeier.a3},
                    {"a4", c.sellmeier.a4}, {"a5", c.sellmeier.a5}, {"a6", c.sellmeier.a6},
                    {"b1", c.sellmeier.b1}, {"b2", c.sellmeier.b2}, {"b3", c.sellmeier.b3},
                    {"b4", c.sellmeier.b4},
                    {"valid_min_um", c.sellmeier.valid_min_um},
                    {"valid_max_um", c.sellmeier.valid_max_um},
                    {"reference", c.sellmeier.reference}};
  j["cross_section_wavelength_um"] = c.cross_section_wavelength_um;
  j["idler_jacobian"] = c.idler_jacobian;
  j["output_dir"] = c.output_dir;
  return j;
}

void apply_set_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ParseError("--set expects dotted.path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
    if (!value.is_primitive()) value = raw;
  } catch (const json::parse_error&) {
    value = raw;  // unquoted strings
  }

  json* node = &doc;
  std::istringstream in(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, '.')) {
    if (part.empty()) throw ParseError("--set path has an empty component: '" + path + "'");
    parts.push_back(part);
  }
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    json& child = (*node)[parts[i]];
    if (!child.is_object()) child = json::object();
    node = &child;
  }
  (*node)[parts.back()] = value;
}

RunConfig load_run_config(const std::string& config_path,
                          const std::vector<std::string>& overrides) {
  json doc = json::object();
  if (!config_path.empty()) doc = load_json_file(config_path);
  if (!doc.is_object()) throw ParseError(config_path + ": configuration must be a JSON object");
  if (!overrides.empty() && doc.contains("n_nl")) {
    // normalize the bare-design form so design.* overrides compose with it
    doc = json{{"design", doc}};
  }
  for (const auto& o : overrides) apply_set_override(doc, o);
  return config_from_json(doc);
}

}  // namespace spdcomb
