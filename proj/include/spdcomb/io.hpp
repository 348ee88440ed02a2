#pragma once
#include <json.hpp>

#include <string>
#include <vector>

#include "spdcomb/analysis.hpp"
#include "spdcomb/interference.hpp"
#include "spdcomb/superlattice.hpp"
#include "spdcomb/types.hpp"

namespace spdcomb {

using json = nlohmann::json;

/// Canonical float formatting for CSV artifacts: 9 significant digits.
std::string format_g9(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Numeric CSV with an optional single header line.
struct CsvTable {
  std::vector<std::string> header;  // empty when the file has no header
  std::vector<Arrayd> columns;
  Index rows = 0;
};
CsvTable read_csv_table(const std::string& path);

/// wavelength_um,intensity[,intensity_convolved]
void write_spectrum_csv(const std::string& path, const Spectrum& raw,
                        const Spectrum* convolved = nullptr);

/// First two numeric columns; accepts ascending or descending axes and
/// returns ascending.  Used for external reference spectra.
Spectrum read_spectrum_csv(const std::string& path);

/// First row: empty corner + theta values; first column: wavelengths.
void write_map_csv(const std::string& path, const AngularMap& m);
AngularMap read_map_csv(const std::string& path);

/// index,z_front_um,length_um,sign
void write_sequence_csv(const std::string& path, const DomainSequence& seq);

/// theta_deg,intensity[,intensity_convolved]
void write_cross_section_csv(const std::string& path, const Arrayd& theta,
                             const Arrayd& raw, const Arrayd* convolved = nullptr);

json design_to_json(const DesignSpec& d);
/// Parse onto `base` (omitted keys keep the base values); unknown keys or
/// wrong types raise ParseError mentioning `context`.
DesignSpec design_from_json(const json& j, const DesignSpec& base,
                            const std::string& context = "design");

json envelope_to_json(const EnvelopeFit& e);
json peaks_to_json(const std::vector<Peak>& peaks);
/// Keys: peaks, mean_spacing_um, median_spacing_um, envelope, spcc;
/// optional members are omitted when absent.
json stats_to_json(const CombStats& s);

/// json::parse with file/position context in the ParseError message.
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace spdcomb
