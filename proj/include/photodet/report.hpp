#pragma once

// DetectionReport: the serializable result of a scenario run.
//
// JSON layout (keys are emitted sorted, numbers in shortest round-trip form):
//   {
//     "format": "photodet-report", "format_version": 1,
//     "scenario": str, "quantity": "rate" | "spectrum" | "time-series" | "table",
//     "model": {"kind": str, "params": {name: number}},
//     "columns": [{"name": str, "unit": str, "description": str}],
//     "rows": [[number, ...], ...],           // first column is the abscissa
//     "summary": {name: number},
//     "provenance": {...}                      // see Provenance
//   }
//
// Timestamps never enter the report; export_report writes them to a
// separate "<basename>.meta.json" sidecar.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace photodet {

struct Column {
  std::string name;
  std::string unit;
  std::string description;
  bool operator==(const Column&) const = default;
};

struct Provenance {
  std::string library_version;
  std::vector<std::size_t> truncation;  // Fock cutoff per mode
  std::optional<double> eta;
  std::string response;
  std::string coupling_operator;
  double degeneracy_tol = 0.0;
  bool convergence_checked = false;
  bool convergence_override = false;
  std::size_t convergence_levels = 0;
  double convergence_tolerance = 0.0;
  std::optional<double> convergence_drift;
  std::vector<std::string> warnings;
  bool operator==(const Provenance&) const = default;
};

struct DetectionReport {
  std::string scenario;
  std::string quantity;
  std::string model_kind;
  std::map<std::string, double> model_params;
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> summary;
  Provenance provenance;
  bool operator==(const DetectionReport&) const = default;
};

/// Throws ValidationError on non-finite data, ragged rows or, for spectra and
/// time series, a non-increasing abscissa.
void validate_report(const DetectionReport& report);

nlohmann::json to_json(const DetectionReport& report);
DetectionReport report_from_json(const nlohmann::json& j);

/// '#'-prefixed header documenting columns and provenance, then one CSV header line and the rows.
std::string to_csv(const DetectionReport& report);

enum class ExportFormat { json, csv };

ExportFormat parse_export_format(const std::string& name);

/// Writes <dir>/<basename>.<json|csv>; returns the written path.
std::filesystem::path export_report(const DetectionReport& report, const std::filesystem::path& dir,
                                    const std::string& basename, ExportFormat format);

/// Writes <dir>/<basename>.meta.json with run metadata (timestamp etc.).
std::filesystem::path write_sidecar(const std::filesystem::path& dir, const std::string& basename,
                                    const nlohmann::json& metadata);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace photodet
