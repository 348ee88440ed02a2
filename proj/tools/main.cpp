#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "render.hpp"
#include "spdcomb/io.hpp"
#include "spdcomb/run.hpp"

namespace {

using namespace spdcomb;

int fail_with(const std::exception& e) {
  int code = 1;
  const char* type = "runtime_error";
  if (dynamic_cast<const ParseError*>(&e)) {
    code = 2;
    type = "parse_error";
  } else if (dynamic_cast<const InvalidInput*>(&e)) {
    type = "invalid_input";
  } else if (dynamic_cast<const InsufficientData*>(&e)) {
    type = "insufficient_data";
  } else if (dynamic_cast<const FitFailure*>(&e)) {
    type = "fit_failure";
  } else if (dynamic_cast<const UndefinedCorrelation*>(&e)) {
    type = "undefined_correlation";
  }
  const json err = {{"error", {{"type", type}, {"message", e.what()}, {"exit_code", code}}}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  return code;
}

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  int threads = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration (see README)");
  cmd->add_option("--set", o.sets, "Override a config value, dotted.path=value")
      ->take_all();
  cmd->add_option("--out", o.out_dir, "Output directory (overrides config output_dir)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--quiet", o.quiet, "Suppress warnings");
}

RunConfig resolve_config(const CommonOpts& o) {
  RunConfig c = load_run_config(o.config_path, o.sets);
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  return c;
}

std::vector<double> parse_temperature_list(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(cur.c_str(), &end);
    if (end == cur.c_str() || *end != '\0')
      throw ParseError("cannot parse temperature '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == ',')
      flush();
    else if (c != ' ')
      cur += c;
  }
  flush();
  return out;
}

render::Rgb series_color(size_t i) {
  static const render::Rgb palette[] = {
      {31, 119, 180},   // simulated: blue
      {44, 160, 44},    // convolved: green
      {148, 103, 189},  // extra columns: purple
      {140, 86, 75},
  };
  return palette[i % 4];
}

void plot_one(const std::string& input, const std::string& output,
              const std::string& reference_csv) {
  const std::string text = read_text_file(input);
  const bool is_map = !text.empty() && text[0] == ',';
  if (is_map) {
    const AngularMap m = read_map_csv(input);
    render::heatmap_png(output, m.wavelength_um, m.theta_deg, m.intensity);
    return;
  }
  const CsvTable t = read_csv_table(input);
  if (t.columns.size() < 2) throw ParseError(input + ": need at least 2 columns to plot");
  std::vector<render::Series> series;
  for (size_t c = 1; c < t.columns.size(); ++c) {
    render::Series s;
    s.x = t.columns[0];
    s.y = t.columns[c];
    const double peak = s.y.maxCoeff();
    if (peak > 0) s.y = s.y / peak;  // paper-style normalized display
    s.color = series_color(c - 1);
    series.push_back(std::move(s));
  }
  if (!reference_csv.empty()) {
    const Spectrum ref = read_spectrum_csv(reference_csv);
    render::Series s;
    s.x = ref.wavelength_um;
    s.y = ref.intensity;
    const double peak = s.y.maxCoeff();
    if (peak > 0) s.y = s.y / peak;
    s.color = {255, 127, 14};  // reference: orange
    series.push_back(std::move(s));
  }
  render::line_plot_png(output, series);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear-interference SPDC comb simulator for bi-periodically poled crystals"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  std::string sim_reference;
  auto* sim = app.add_subcommand("simulate", "Collinear spectrum + comb statistics");
  add_common(sim, sim_opts);
  sim->add_option("--reference", sim_reference,
                  "Two-column spectrum CSV correlated against the simulation");

  CommonOpts map_opts;
  auto* map = app.add_subcommand("map2d", "Wavelength-angle emission map");
  add_common(map, map_opts);

  CommonOpts sweep_opts;
  std::string temp_list;
  auto* sweep = app.add_subcommand("sweep-temperature", "Spectra over a temperature list");
  add_common(sweep, sweep_opts);
  sweep->add_option("--temperatures", temp_list, "Comma-separated temperatures in C")
      ->required();

  std::string validate_file, validate_sequence;
  bool validate_quiet = false;
  auto* validate = app.add_subcommand("validate", "Check a design and print derived quantities");
  validate->add_option("design", validate_file, "DesignSpec JSON file")->required();
  validate->add_option("--sequence", validate_sequence,
                       "Also write the expanded domain sequence CSV here");
  validate->add_flag("--quiet", validate_quiet, "Suppress warnings");

  std::vector<std::string> plot_inputs;
  std::string plot_output, plot_reference;
  auto* plot = app.add_subcommand("plot", "Render CSV artifacts to PNG");
  plot->add_option("inputs", plot_inputs, "Spectrum/cross-section/map CSV files")
      ->required();
  plot->add_option("-o,--output", plot_output,
                   "Output PNG (single input only; default: input with .png)");
  plot->add_option("--reference", plot_reference, "Overlay a reference spectrum CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "%s\n",
                 json{{"error", {{"type", "parse_error"}, {"message", e.what()}, {"exit_code", 2}}}}
                     .dump()
                     .c_str());
    return 2;
  }

  try {
    if (sim->parsed()) {
      set_warnings_quiet(sim_opts.quiet);
      RunOptions o{sim_opts.threads, sim_opts.quiet, sim_reference};
      run_simulate(resolve_config(sim_opts), o);
    } else if (map->parsed()) {
      set_warnings_quiet(map_opts.quiet);
      RunOptions o{map_opts.threads, map_opts.quiet, ""};
      run_map2d(resolve_config(map_opts), o);
    } else if (sweep->parsed()) {
      set_warnings_quiet(sweep_opts.quiet);
      RunOptions o{sweep_opts.threads, sweep_opts.quiet, ""};
      run_sweep_temperature(resolve_config(sweep_opts), parse_temperature_list(temp_list), o);
    } else if (validate->parsed()) {
      set_warnings_quiet(validate_quiet);
      const json doc = load_json_file(validate_file);
      const DesignSpec base;
      const DesignSpec d = doc.contains("design")
                               ? design_from_json(doc.at("design"), base, "design")
                               : design_from_json(doc, base, "design");
      const json report = validate_report(d, RunConfig{});
      std::printf("%s\n", report.dump(2).c_str());
      if (!validate_sequence.empty() && d.n_nl >= 1 && d.n_gap >= 0 && d.m_gap >= 1 &&
          d.l_domain_um > 0)
        write_sequence_csv(validate_sequence, build_sequence(d));
    } else if (plot->parsed()) {
      if (!plot_output.empty() && plot_inputs.size() > 1)
        throw InvalidInput("-o/--output needs exactly one input file");
      for (const auto& input : plot_inputs) {
        std::string out = plot_output;
        if (out.empty()) out = std::filesystem::path(input).replace_extension(".png").string();
        plot_one(input, out, plot_reference);
      }
    }
  } catch (const std::exception& e) {
    return fail_with(e);
  }
  return 0;
}
