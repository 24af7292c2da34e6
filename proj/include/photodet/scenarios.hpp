#pragma once

// End-to-end scenarios behind the command-line tool.

#include "photodet/config.hpp"
#include "photodet/kernels.hpp"
#include "photodet/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace photodet {

enum class ScenarioKind { spectrum_check, ground_test, sweep, narrowband, shorttime, jc_vs_rabi };

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int convergence_refusal = 3;
inline constexpr int numerical_failure = 4;
}  // namespace exit_code

struct RunOptions {
  bool allow_unconverged = false;
  kernels::Exec exec = kernels::Exec::parallel;
};

struct RunResult {
  int exit_code = exit_code::ok;
  std::vector<DetectionReport> reports;  // also filled on convergence refusal
  std::string message;
};

/// Never throws: failures map onto exit codes and a message.
RunResult run(ScenarioKind kind, const ScenarioConfig& config, const RunOptions& options = {});

/// Checks scenario-specific requirements without any eigensolve.
void validate_for(ScenarioKind kind, const ScenarioConfig& config);

ModelSystem build_model(const ModelConfig& model, std::optional<double> g = std::nullopt,
                        std::optional<std::size_t> truncation = std::nullopt);
std::size_t model_truncation(const ModelConfig& model);
std::size_t model_dimension(const ModelConfig& model);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
};

/// Least-squares line through (log x, log y); all values must be positive.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// Log-spaced times with t * max_frequency spanning [lo, hi].
std::vector<double> early_time_window(double max_frequency, double lo = 1e-4, double hi = 1e-2,
                                      std::size_t count = 21);

}  // namespace photodet
