#include "spdcomb/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spdcomb {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double& v) {
  const char* begin = s.c_str();
  char* end = nullptr;
  v = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line << ": " << what;
  throw ParseError(os.str());
}

}  // namespace

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

CsvTable read_csv_table(const std::string& path) {
  const std::string text = read_text_file(path);
  CsvTable t;
  std::vector<std::vector<double>> data;
  size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  size_t n_cols = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (size_t i = 0; i < fields.size(); ++i) {
      if (!parse_double(fields[i], row[i])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (data.empty() && t.header.empty()) {
        t.header = fields;
        n_cols = fields.size();
        continue;
      }
      parse_fail(path, line_no, "cannot parse row as numbers: '" + line + "'");
    }
    if (n_cols == 0) n_cols = fields.size();
    if (fields.size() != n_cols)
      parse_fail(path, line_no, "expected " + std::to_string(n_cols) + " columns, got " +
                                    std::to_string(fields.size()));
    data.push_back(std::move(row));
  }
  if (data.empty()) throw ParseError(path + ": no data rows");
  t.rows = static_cast<Index>(data.size());
  t.columns.assign(n_cols, Arrayd(t.rows));
  for (Index r = 0; r < t.rows; ++r)
    for (size_t c = 0; c < n_cols; ++c) t.columns[c][r] = data[r][c];
  return t;
}

void write_spectrum_csv(const std::string& path, const Spectrum& raw,
                        const Spectrum* convolved) {
  if (convolved && convolved->intensity.size() != raw.intensity.size())
    throw InvalidInput("convolved column length differs from raw");
  std::ostringstream os;
  os << "wavelength_um,intensity";
  if (convolved) os << ",intensity_convolved";
  os << "\n";
  for (Index i = 0; i < raw.wavelength_um.size(); ++i) {
    os << format_g9(raw.wavelength_um[i]) << "," << format_g9(raw.intensity[i]);
    if (convolved) os << "," << format_g9(convolved->intensity[i]);
    os << "\n";
  }
  write_text_file(path, os.str());
}

Spectrum read_spectrum_csv(const std::string& path) {
  const CsvTable t = read_csv_table(path);
  if (t.columns.size() < 2) throw ParseError(path + ": need at least 2 columns");
  if (t.rows < 2) throw ParseError(path + ": need at least 2 rows");
  Spectrum s;
  s.wavelength_um = t.columns[0];
  s.intensity = t.columns[1];
  const bool ascending = s.wavelength_um[1] > s.wavelength_um[0];
  if (!ascending) {
    s.wavelength_um = s.wavelength_um.reverse().eval();
    s.intensity = s.intensity.reverse().eval();
  }
  for (Index i = 1; i < s.wavelength_um.size(); ++i)
    if (!(s.wavelength_um[i] > s.wavelength_um[i - 1]))
      throw ParseError(path + ": wavelength column is not strictly monotone");
  return s;
}

void write_map_csv(const std::string& path, const AngularMap& m) {
  std::ostringstream os;
  for (Index j = 0; j < m.theta_deg.size(); ++j) os << "," << format_g9(m.theta_deg[j]);
  os << "\n";
  for (Index i = 0; i < m.wavelength_um.size(); ++i) {
    os << format_g9(m.wavelength_um[i]);
    for (Index j = 0; j < m.theta_deg.size(); ++j) os << "," << format_g9(m.intensity(i, j));
    os << "\n";
  }
  write_text_file(path, os.str());
}

AngularMap read_map_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  size_t line_no = 0;
  AngularMap m;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> rows;
  size_t n_theta = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (line_no == 1) {
      if (!fields.empty() && !fields[0].empty())
        parse_fail(path, line_no, "map CSV must start with an empty corner cell");
      n_theta = fields.size() - 1;
      if (n_theta == 0) parse_fail(path, line_no, "no angle columns");
      m.theta_deg.resize(static_cast<Index>(n_theta));
      for (size_t j = 1; j < fields.size(); ++j) {
        double v;
        if (!parse_double(fields[j], v))
          parse_fail(path, line_no, "bad angle value '" + fields[j] + "'");
        m.theta_deg[static_cast<Index>(j - 1)] = v;
      }
      continue;
    }
    if (fields.size() != n_theta + 1)
      parse_fail(path, line_no, "expected " + std::to_string(n_theta + 1) + " fields");
    std::vector<double> row(n_theta);
    double lv;
    if (!parse_double(fields[0], lv))
      parse_fail(path, line_no, "bad wavelength value '" + fields[0] + "'");
    for (size_t j = 1; j < fields.size(); ++j)
      if (!parse_double(fields[j], row[j - 1]))
        parse_fail(path, line_no, "bad intensity value '" + fields[j] + "'");
    lambdas.push_back(lv);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");
  m.wavelength_um = Eigen::Map<const Arrayd>(lambdas.data(), static_cast<Index>(lambdas.size()));
  m.intensity.resize(static_cast<Index>(rows.size()), static_cast<Index>(n_theta));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n_theta; ++j)
      m.intensity(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

void write_sequence_csv(const std::string& path, const DomainSequence& seq) {
  std::ostringstream os;
  os << "index,z_front_um,length_um,sign\n";
  for (Index i = 0; i < seq.size(); ++i) {
    os << i << "," << format_g9(seq.z_front_um[i]) << "," << format_g9(seq.length_um[i])
       << "," << (seq.sign[i] > 0 ? 1 : -1) << "\n";
  }
  write_text_file(path, os.str());
}

void write_cross_section_csv(const std::string& path, const Arrayd& theta,
                             const Arrayd& raw, const Arrayd* convolved) {
  std::ostringstream os;
  os << "theta_deg,intensity";
  if (convolved) os << ",intensity_convolved";
  os << "\n";
  for (Index i = 0; i < theta.size(); ++i) {
    os << format_g9(theta[i]) << "," << format_g9(raw[i]);
    if (convolved) os << "," << format_g9((*convolved)[i]);
    os << "\n";
  }
  write_text_file(path, os.str());
}

json design_to_json(const DesignSpec& d) {
  return json{{"n_nl", d.n_nl},
              {"n_gap", d.n_gap},
              {"m_gap", d.m_gap},
              {"l_domain_um", d.l_domain_um},
              {"crystal_length_budget_um", d.crystal_length_budget_um}};
}

DesignSpec design_from_json(const json& j, const DesignSpec& base, const std::string& context) {
  if (!j.is_object()) throw ParseError(context + " must be a JSON object");
  DesignSpec d = base;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_nl" || key == "n_gap" || key == "m_gap") {
      if (!value.is_number_integer())
        throw ParseError(context + "." + key + " must be an integer");
      const long long v = value.get<long long>();
      if (key == "n_nl") d.n_nl = static_cast<int>(v);
      if (key == "n_gap") d.n_gap = static_cast<int>(v);
      if (key == "m_gap") d.m_gap = static_cast<int>(v);
    } else if (key == "l_domain_um" || key == "crystal_length_budget_um") {
      if (!value.is_number()) throw ParseError(context + "." + key + " must be a number");
      if (key == "l_domain_um") d.l_domain_um = value.get<double>();
      if (key == "crystal_length_budget_um") d.crystal_length_budget_um = value.get<double>();
    } else {
      throw ParseError("unknown key '" + key + "' in " + context);
    }
  }
  return d;
}

json envelope_to_json(const EnvelopeFit& e) {
  return json{{"amplitude", e.amplitude},
              {"center_um", e.center_um},
              {"sigma_um", e.sigma_um},
              {"fwhm_um", e.fwhm_um},
              {"residual_rms", e.residual_rms}};
}

json peaks_to_json(const std::vector<Peak>& peaks) {
  json arr = json::array();
  for (const auto& p : peaks)
    arr.push_back(json{{"wavelength_um", p.wavelength_um},
                       {"height", p.height},
                       {"prominence", p.prominence}});
  return arr;
}

json stats_to_json(const CombStats& s) {
  json j;
  j["peaks"] = peaks_to_json(s.peaks);
  if (s.mean_spacing_um) j["mean_spacing_um"] = *s.mean_spacing_um;
  if (s.median_spacing_um) j["median_spacing_um"] = *s.median_spacing_um;
  if (s.envelope) {
    j["envelope"] = envelope_to_json(*s.envelope);
    j["envelope"]["fit_source"] = s.envelope_from_samples ? "samples" : "peaks";
  }
  if (s.spcc_vs_reference) j["spcc"] = *s.spcc_vs_reference;
  return j;
}

json load_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace spdcomb
