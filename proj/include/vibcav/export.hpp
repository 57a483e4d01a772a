#pragma once

// CSV and JSON serialization of scans and spectra.
//
// CSV: `#`-prefixed provenance comments, then a header row, then one line per
// sample. Numbers are written in scientific notation with 17 significant
// digits so a read back reproduces every double exactly.
//
// JSON: one object {schema_version, kind, tool, version, params, ...}.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vibcav/experiments.hpp"

namespace vibcav {

inline constexpr int kJsonSchemaVersion = 1;

enum class ExportFormat { Csv, Json };

struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
};

/// Round-trip exact scientific notation (17 significant digits).
std::string format_exact(double value);

void write_csv(const ScanResult& scan, const Provenance& provenance, std::ostream& out);
void write_csv(const SpectrumTable& table, const Provenance& provenance, std::ostream& out);
void write_json(const ScanResult& scan, const Provenance& provenance, std::ostream& out);
void write_json(const SpectrumTable& table, const Provenance& provenance, std::ostream& out);

/// Writes to `destination`, or to standard output when it is "-" or empty.
/// Throws IoError naming the path when the file cannot be written.
void export_result(const ScanResult& scan, ExportFormat format,
                   const std::string& destination, const Provenance& provenance);
void export_result(const SpectrumTable& table, ExportFormat format,
                   const std::string& destination, const Provenance& provenance);

ScanResult read_scan_csv(std::istream& in);
ScanResult read_scan_json(std::istream& in);
SpectrumTable read_spectrum_csv(std::istream& in);
SpectrumTable read_spectrum_json(std::istream& in);

}  // namespace vibcav
