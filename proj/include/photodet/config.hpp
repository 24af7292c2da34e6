#pragma once

// Declarative scenario configuration (JSON, schema_version 1). Unknown keys
// are errors. All frequencies are in the user's unit (conventionally omega0),
// times in its inverse.

#include "photodet/detection.hpp"
#include "photodet/dressed.hpp"
#include "photodet/models.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace photodet {

inline constexpr int kSchemaVersion = 1;

struct ModelConfig {
  std::string type = "rabi";  // rabi | jc | circuit
  double omega0 = 1.0;
  double omega_a = 1.0;
  double g = 0.0;
  std::size_t n_fock = 40;
  CircuitSpec circuit;  // used when type == "circuit"
};

struct ConvergenceConfig {
  std::size_t levels = 6;
  double tolerance = 1e-8;
  std::size_t max_dim = 4096;
};

struct ScenarioSettings {
  std::optional<std::string> name;
  std::optional<std::string> coupling;        // default: quadrature (rabi/jc), flux (circuit)
  std::string number_operator = "photon_number";
  std::string operator_name = "annihilation"; // system operator for the short-time experiment
  std::size_t states = 6;
  std::vector<double> g_grid;
  std::vector<double> omega_grid;
  std::vector<double> t_grid;
  double eta = 1e-2;
  std::size_t initial = 0;
  double detector_coupling = 1.0;
  std::vector<AbsorberMode> absorbers;
  ConvergenceConfig convergence;
};

struct OutputConfig {
  std::string dir = ".";
  std::vector<std::string> formats{"json"};
  std::optional<std::string> basename;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  ModelConfig model;
  DetectorResponse response = DetectorResponse::flat(1.0);
  ScenarioSettings scenario;
  OutputConfig output;
};

/// Validates the whole document and throws ConfigError listing every problem.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Expands a grid given either as an explicit array or as
/// {"start", "stop", "count", "spacing": "linear" | "log"}.
std::vector<double> expand_grid(const nlohmann::json& spec, const std::string& where,
                                std::vector<std::string>& issues);

}  // namespace photodet
