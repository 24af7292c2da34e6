#include "photodet/report.hpp"

#include "photodet/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace photodet {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json provenance_json(const Provenance& p) {
  json j = {
      {"library_version", p.library_version},
      {"truncation", p.truncation},
      {"eta", p.eta ? json(*p.eta) : json(nullptr)},
      {"response", p.response},
      {"coupling_operator", p.coupling_operator},
      {"degeneracy_tol", p.degeneracy_tol},
      {"convergence",
       {{"checked", p.convergence_checked},
        {"override", p.convergence_override},
        {"levels", p.convergence_levels},
        {"tolerance", p.convergence_tolerance},
        {"drift", p.convergence_drift ? json(*p.convergence_drift) : json(nullptr)}}},
      {"warnings", p.warnings},
  };
  return j;
}

Provenance provenance_from(const json& j) {
  Provenance p;
  p.library_version = j.at("library_version").get<std::string>();
  p.truncation = j.at("truncation").get<std::vector<std::size_t>>();
  p.eta = optional_from<double>(j, "eta");
  p.response = j.at("response").get<std::string>();
  p.coupling_operator = j.at("coupling_operator").get<std::string>();
  p.degeneracy_tol = j.at("degeneracy_tol").get<double>();
  const json& c = j.at("convergence");
  p.convergence_checked = c.at("checked").get<bool>();
  p.convergence_override = c.at("override").get<bool>();
  p.convergence_levels = c.at("levels").get<std::size_t>();
  p.convergence_tolerance = c.at("tolerance").get<double>();
  p.convergence_drift = optional_from<double>(c, "drift");
  p.warnings = j.at("warnings").get<std::vector<std::string>>();
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void validate_report(const DetectionReport& report) {
  for (const auto& row : report.rows) {
    if (row.size() != report.columns.size()) throw ValidationError("report row width differs from column count");
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("report contains a non-finite value");
    }
  }
  for (const auto& [name, v] : report.summary) {
    if (!std::isfinite(v)) throw ValidationError("report summary '" + name + "' is not finite");
  }
  if (report.quantity == "spectrum" || report.quantity == "time-series") {
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      if (!(report.rows[i][0] > report.rows[i - 1][0])) {
        throw ValidationError("report abscissa must be strictly increasing");
      }
    }
  }
}

json to_json(const DetectionReport& report) {
  json columns = json::array();
  for (const auto& c : report.columns) {
    columns.push_back({{"name", c.name}, {"unit", c.unit}, {"description", c.description}});
  }
  return json{
      {"format", "photodet-report"},
      {"format_version", kFormatVersion},
      {"scenario", report.scenario},
      {"quantity", report.quantity},
      {"model", {{"kind", report.model_kind}, {"params", report.model_params}}},
      {"columns", columns},
      {"rows", report.rows},
      {"summary", report.summary},
      {"provenance", provenance_json(report.provenance)},
  };
}

DetectionReport report_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "photodet-report" || j.at("format_version").get<int>() != kFormatVersion) {
      throw ValidationError("not a photodet report (format/version mismatch)");
    }
    DetectionReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.quantity = j.at("quantity").get<std::string>();
    r.model_kind = j.at("model").at("kind").get<std::string>();
    r.model_params = j.at("model").at("params").get<std::map<std::string, double>>();
    for (const auto& c : j.at("columns")) {
      r.columns.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>(),
                           c.at("description").get<std::string>()});
    }
    r.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    r.summary = j.at("summary").get<std::map<std::string, double>>();
    r.provenance = provenance_from(j.at("provenance"));
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string to_csv(const DetectionReport& report) {
  std::ostringstream os;
  os << "# photodet report\n";
  os << "# scenario: " << report.scenario << "\n";
  os << "# quantity: " << report.quantity << "\n";
  os << "# model: " << report.model_kind;
  for (const auto& [k, v] : report.model_params) os << " " << k << "=" << format_double(v);
  os << "\n";
  const auto& p = report.provenance;
  os << "# library_version: " << p.library_version << "\n";
  os << "# truncation:";
  for (auto t : p.truncation) os << " " << t;
  os << "\n";
  if (p.eta) os << "# eta: " << format_double(*p.eta) << "\n";
  if (!p.response.empty()) os << "# response: " << p.response << "\n";
  if (!p.coupling_operator.empty()) os << "# coupling_operator: " << p.coupling_operator << "\n";
  for (const auto& w : p.warnings) os << "# warning: " << w << "\n";
  for (const auto& [k, v] : report.summary) os << "# summary " << k << ": " << format_double(v) << "\n";
  for (const auto& c : report.columns) {
    os << "# column " << c.name << " [" << c.unit << "]: " << c.description << "\n";
  }
  for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i].name;
  os << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
  return os.str();
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "json") return ExportFormat::json;
  if (name == "csv") return ExportFormat::csv;
  throw ParameterError("unknown export format '" + name + "' (expected json or csv)");
}

std::filesystem::path export_report(const DetectionReport& report, const std::filesystem::path& dir,
                                    const std::string& basename, ExportFormat format) {
  validate_report(report);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  if (format == ExportFormat::json) {
    const auto path = dir / (basename + ".json");
    write_file(path, to_json(report).dump(2) + "\n");
    return path;
  }
  const auto path = dir / (basename + ".csv");
  write_file(path, to_csv(report));
  return path;
}

std::filesystem::path write_sidecar(const std::filesystem::path& dir, const std::string& basename,
                                    const nlohmann::json& metadata) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const auto path = dir / (basename + ".meta.json");
  write_file(path, metadata.dump(2) + "\n");
  return path;
}

}  // namespace photodet
