#include "vibcav/export.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "vibcav/errors.hpp"
#include "vibcav/version.hpp"

namespace vibcav {
namespace {

using nlohmann::json;

constexpr const char* kScanHeader =
    "omega,flux_total,flux_nonresonant,dominant_k,dominant_kp,flags,error";
constexpr const char* kSpectrumHeader = "omega,density";

void write_provenance(const Provenance& p, std::ostream& out) {
  out << "# tool: vibcav " << kVersion << '\n';
  if (!p.command.empty()) out << "# command: " << p.command << '\n';
  for (const auto& [key, value] : p.params) out << "# param " << key << '=' << value << '\n';
  out << "# reproducibility: deterministic evaluation, no random seed\n";
}

json provenance_json(const Provenance& p, const char* kind) {
  json params = json::object();
  for (const auto& [key, value] : p.params) params[key] = value;
  return {{"schema_version", kJsonSchemaVersion},
          {"kind", kind},
          {"tool", "vibcav"},
          {"version", kVersion},
          {"command", p.command},
          {"params", params}};
}

double parse_double(const std::string& text) {
  if (text == "nan" || text == "NaN" || text == "-nan") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw IoError("malformed number '" + text + "'");
  }
  if (used != text.size()) throw IoError("malformed number '" + text + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line, std::size_t max_fields) {
  // the last field (error text) may itself contain commas
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) break;
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  fields.push_back(line.substr(start));
  return fields;
}

double json_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json number_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename Writer>
void to_destination(const std::string& destination, Writer&& write) {
  if (destination.empty() || destination == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(destination, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + destination + "' for writing: " + std::strerror(errno));
  }
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + destination + "' failed");
}

bool read_data_line(std::istream& in, std::string& line, SpectrumTable* peaks_sink) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (peaks_sink && line.rfind("# peak,", 0) == 0) {
        const auto f = split_csv(line.substr(7), 3);
        if (f.size() != 3) throw IoError("malformed peak line: " + line);
        peaks_sink->peaks.push_back(
            {parse_double(f[0]), parse_double(f[1]), parse_double(f[2])});
      }
      continue;
    }
    return true;
  }
  return false;
}

}  // namespace

std::string format_exact(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void write_csv(const ScanResult& scan, const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  out << "# axis: " << scan.axis_name << " [" << scan.axis_unit << "]\n";
  out << kScanHeader << '\n';
  for (const auto& r : scan.rows) {
    out << format_exact(r.x) << ',' << format_exact(r.flux_total) << ','
        << format_exact(r.flux_nonresonant) << ',' << r.dominant_k << ',' << r.dominant_kp
        << ',' << r.flags << ',' << r.error.value_or("") << '\n';
  }
}

void write_csv(const SpectrumTable& table, const Provenance& provenance, std::ostream& out) {
  write_provenance(provenance, out);
  for (const auto& p : table.peaks) {
    out << "# peak," << format_exact(p.center) << ',' << format_exact(p.height) << ','
        << format_exact(p.fwhm) << '\n';
  }
  out << kSpectrumHeader << '\n';
  for (std::size_t i = 0; i < table.omega_grid.size(); ++i) {
    out << format_exact(table.omega_grid[i]) << ',' << format_exact(table.density[i]) << '\n';
  }
}

void write_json(const ScanResult& scan, const Provenance& provenance, std::ostream& out) {
  json doc = provenance_json(provenance, "scan");
  doc["axis"] = {{"name", scan.axis_name}, {"unit", scan.axis_unit}};
  json rows = json::array();
  for (const auto& r : scan.rows) {
    rows.push_back({{"x", number_json(r.x)},
                    {"flux_total", number_json(r.flux_total)},
                    {"flux_nonresonant", number_json(r.flux_nonresonant)},
                    {"dominant_k", r.dominant_k},
                    {"dominant_kp", r.dominant_kp},
                    {"flags", r.flags},
                    {"error", r.error ? json(*r.error) : json(nullptr)}});
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

void write_json(const SpectrumTable& table, const Provenance& provenance, std::ostream& out) {
  json doc = provenance_json(provenance, "spectrum");
  json rows = json::array();
  for (std::size_t i = 0; i < table.omega_grid.size(); ++i) {
    rows.push_back({{"omega", number_json(table.omega_grid[i])},
                    {"density", number_json(table.density[i])}});
  }
  json peaks = json::array();
  for (const auto& p : table.peaks) {
    peaks.push_back({{"center", p.center}, {"height", p.height}, {"fwhm", p.fwhm}});
  }
  doc["rows"] = std::move(rows);
  doc["peaks"] = std::move(peaks);
  out << doc.dump(1) << '\n';
}

void export_result(const ScanResult& scan, ExportFormat format,
                   const std::string& destination, const Provenance& provenance) {
  to_destination(destination, [&](std::ostream& out) {
    format == ExportFormat::Csv ? write_csv(scan, provenance, out)
                                : write_json(scan, provenance, out);
  });
}

void export_result(const SpectrumTable& table, ExportFormat format,
                   const std::string& destination, const Provenance& provenance) {
  to_destination(destination, [&](std::ostream& out) {
    format == ExportFormat::Csv ? write_csv(table, provenance, out)
                                : write_json(table, provenance, out);
  });
}

ScanResult read_scan_csv(std::istream& in) {
  ScanResult scan;
  std::string line;
  if (!read_data_line(in, line, nullptr) || line != kScanHeader) {
    throw IoError("scan CSV header missing or unexpected");
  }
  while (read_data_line(in, line, nullptr)) {
    const auto f = split_csv(line, 7);
    if (f.size() != 7) throw IoError("scan CSV row has wrong field count: " + line);
    ScanRow row{parse_double(f[0]), parse_double(f[1]), parse_double(f[2]),
                std::stoi(f[3]), std::stoi(f[4]),
                static_cast<std::uint32_t>(std::stoul(f[5])), {}};
    if (!f[6].empty()) row.error = f[6];
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

ScanResult read_scan_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid scan JSON: ") + e.what());
  }
  if (doc.value("kind", "") != "scan") throw IoError("JSON document is not a scan");
  ScanResult scan;
  scan.axis_name = doc.at("axis").at("name").get<std::string>();
  scan.axis_unit = doc.at("axis").at("unit").get<std::string>();
  for (const auto& r : doc.at("rows")) {
    ScanRow row{json_number(r.at("x")), json_number(r.at("flux_total")),
                json_number(r.at("flux_nonresonant")), r.at("dominant_k").get<int>(),
                r.at("dominant_kp").get<int>(), r.at("flags").get<std::uint32_t>(), {}};
    if (!r.at("error").is_null()) row.error = r.at("error").get<std::string>();
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

SpectrumTable read_spectrum_csv(std::istream& in) {
  SpectrumTable table;
  std::string line;
  if (!read_data_line(in, line, &table) || line != kSpectrumHeader) {
    throw IoError("spectrum CSV header missing or unexpected");
  }
  while (read_data_line(in, line, &table)) {
    const auto f = split_csv(line, 2);
    if (f.size() != 2) throw IoError("spectrum CSV row has wrong field count: " + line);
    table.omega_grid.push_back(parse_double(f[0]));
    table.density.push_back(parse_double(f[1]));
  }
  return table;
}

SpectrumTable read_spectrum_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(std::string("invalid spectrum JSON: ") + e.what());
  }
  if (doc.value("kind", "") != "spectrum") throw IoError("JSON document is not a spectrum");
  SpectrumTable table;
  for (const auto& r : doc.at("rows")) {
    table.omega_grid.push_back(json_number(r.at("omega")));
    table.density.push_back(json_number(r.at("density")));
  }
  for (const auto& p : doc.at("peaks")) {
    table.peaks.push_back(
        {p.at("center").get<double>(), p.at("height").get<double>(), p.at("fwhm").get<double>()});
  }
  return table;
}

}  // namespace vibcav
