// photodet: command-line front end for the detection scenarios.
//
//   photodet <scenario> --config run.json [--out DIR] [--format json|csv]...
//                       [--threads N] [--allow-unconverged]
//
// Exit codes: 0 ok, 2 bad configuration, 3 truncation not converged,
// 4 numerical failure.

#include "photodet/errors.hpp"
#include "photodet/scenarios.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <ctime>
#include <iostream>

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> formats;
  int threads = 0;
  bool allow_unconverged = false;
  bool serial = false;
};

int execute(photodet::ScenarioKind kind, const Options& opt, const std::vector<std::string>& argv) {
  using namespace photodet;
  ScenarioConfig cfg;
  try {
    cfg = load_config(opt.config);
  } catch (const ConfigError& e) {
    std::cerr << "photodet: invalid configuration " << opt.config << ":\n";
    for (const auto& issue : e.issues()) std::cerr << "  - " << issue << "\n";
    return exit_code::config_error;
  } catch (const std::exception& e) {
    std::cerr << "photodet: " << e.what() << "\n";
    return exit_code::config_error;
  }

  std::vector<ExportFormat> formats;
  try {
    for (const auto& f : opt.formats.empty() ? cfg.output.formats : opt.formats) {
      formats.push_back(parse_export_format(f));
    }
  } catch (const std::exception& e) {
    std::cerr << "photodet: " << e.what() << "\n";
    return exit_code::config_error;
  }
  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  RunOptions run_opts;
  run_opts.allow_unconverged = opt.allow_unconverged;
  run_opts.exec = opt.serial ? kernels::Exec::serial : kernels::Exec::parallel;
  const RunResult result = run(kind, cfg, run_opts);
  if (!result.message.empty()) std::cerr << "photodet: " << result.message << "\n";

  const std::filesystem::path dir = opt.out.empty() ? cfg.output.dir : opt.out;
  const std::string base = cfg.output.basename.value_or(std::string(scenario_name(kind)));
  try {
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
      const std::string name = result.reports.size() == 1 ? base : base + "_" + std::to_string(i);
      for (const auto f : formats) std::cout << export_report(result.reports[i], dir, name, f).string() << "\n";
      std::string command;
      for (const auto& a : argv) command += (command.empty() ? "" : " ") + a;
      const nlohmann::json meta = {{"created_utc", utc_timestamp()},
                                   {"command", command},
                                   {"config", opt.config},
                                   {"threads", omp_get_max_threads()},
                                   {"exit_code", result.exit_code},
                                   {"library_version", PHOTODET_VERSION}};
      write_sidecar(dir, name, meta);
    }
  } catch (const std::exception& e) {
    std::cerr << "photodet: cannot write output: " << e.what() << "\n";
    return exit_code::config_error;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photodetection rates for ultrastrongly coupled light-matter systems"};
  app.set_version_flag("--version", PHOTODET_VERSION);
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> args(argv, argv + argc);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum-check", "Truncation convergence of the lowest levels"},
      {"ground-test", "Bare photon number versus dressed detection rate per eigenstate"},
      {"sweep", "Ground-state quantities over a coupling grid"},
      {"narrowband", "Detection spectrum of a narrow-band absorber"},
      {"shorttime", "Absorption probability right after switching on a detector"},
      {"jc-vs-rabi", "Rotating-wave versus full model over a coupling grid"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-c,--config", opt.config, "Scenario configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", opt.out, "Output directory (overrides output.dir)");
    sub->add_option("-f,--format", opt.formats, "Export format: json or csv (repeatable)");
    sub->add_option("-t,--threads", opt.threads, "OpenMP threads")->check(CLI::PositiveNumber);
    sub->add_flag("--allow-unconverged", opt.allow_unconverged, "Skip the truncation convergence gate");
    sub->add_flag("--serial", opt.serial, "Use the serial reference kernels");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : photodet::exit_code::config_error;
  }
  for (const auto* sub : app.get_subcommands()) {
    return execute(*photodet::parse_scenario_kind(sub->get_name()), opt, args);
  }
  return photodet::exit_code::config_error;
}
