#include "photodet/scenarios.hpp"

#include "photodet/errors.hpp"
#include "photodet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace photodet {

namespace {

constexpr double kPerturbativeLimit = 0.1;
constexpr double kDefaultAbsorberCoupling = 1e-2;

struct ConvergenceRefusal {
  DetectionReport report;
  std::string message;
};

std::vector<std::string> known_operators(const ModelConfig& m) {
  // Operator registries do not depend on truncation; probe a tiny instance.
  ModelConfig tiny = m;
  tiny.n_fock = 4;
  for (auto& mode : tiny.circuit.modes) mode.truncation = 2;
  const ModelSystem probe = build_model(tiny);
  std::vector<std::string> names;
  for (const auto& [name, op] : probe.coupling_ops) names.push_back(name);
  return names;
}

std::string default_coupling(const ModelConfig& m) { return m.type == "circuit" ? "flux" : "quadrature"; }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

std::vector<AbsorberMode> absorbers_or_default(const ScenarioConfig& cfg, double energy_scale) {
  if (!cfg.scenario.absorbers.empty()) return cfg.scenario.absorbers;
  return {AbsorberMode{energy_scale, kDefaultAbsorberCoupling}};
}

class Runner {
 public:
  Runner(const ScenarioConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts) {}

  std::vector<DetectionReport> run(ScenarioKind kind) {
    switch (kind) {
      case ScenarioKind::spectrum_check: return {spectrum_check()};
      case ScenarioKind::ground_test: return {ground_test()};
      case ScenarioKind::sweep: return {sweep()};
      case ScenarioKind::narrowband: return {narrowband()};
      case ScenarioKind::shorttime: return {shorttime()};
      case ScenarioKind::jc_vs_rabi: return {jc_vs_rabi()};
    }
    return {};
  }

  bool refused() const { return refused_; }

 private:
  const ScenarioConfig& cfg_;
  const RunOptions& opts_;
  bool refused_ = false;

  std::string coupling_name() const { return cfg_.scenario.coupling.value_or(default_coupling(cfg_.model)); }

  DetectionReport base_report(std::string scenario, std::string quantity, const ModelSystem& model) const {
    DetectionReport r;
    r.scenario = std::move(scenario);
    r.quantity = std::move(quantity);
    r.model_kind = model.kind;
    r.model_params = model.params;
    r.provenance.library_version = PHOTODET_VERSION;
    r.provenance.truncation = model.space.mode_dims();
    r.provenance.degeneracy_tol = kDegeneracyRel * model.energy_scale;
    r.provenance.response = cfg_.response.describe();
    r.provenance.coupling_operator = coupling_name();
    r.provenance.convergence_override = opts_.allow_unconverged;
    r.provenance.convergence_levels = cfg_.scenario.convergence.levels;
    r.provenance.convergence_tolerance = cfg_.scenario.convergence.tolerance;
    return r;
  }

  ConvergenceReport convergence_at(const ModelConfig& m, std::optional<double> g) const {
    const auto& cc = cfg_.scenario.convergence;
    const ModelBuilder builder = [&m, g](std::size_t n) { return build_model(m, g, n); };
    return convergence_check(builder, model_truncation(m), cc.levels, cc.tolerance, cc.max_dim);
  }

  static bool passes(const ConvergenceReport& rep, std::size_t base) {
    return rep.converged && rep.recommended_truncation == base;
  }

  DetectionReport convergence_report(const ConvergenceReport& rep, const ModelSystem& model) const {
    DetectionReport r = base_report("spectrum-check", "table", model);
    r.provenance.eta.reset();
    r.columns = {{"truncation", "fock states", "larger truncation of the compared pair"},
                 {"max_drift", "relative", "largest relative change of the tracked levels"}};
    for (std::size_t s = 0; s < rep.drifts.size(); ++s) {
      r.rows.push_back({static_cast<double>(rep.truncations[s + 1]),
                        *std::max_element(rep.drifts[s].begin(), rep.drifts[s].end())});
    }
    r.summary["base_truncation"] = static_cast<double>(model_truncation(cfg_.model));
    r.summary["converged"] = rep.converged ? 1.0 : 0.0;
    r.summary["recommended_truncation"] = static_cast<double>(rep.recommended_truncation);
    for (std::size_t k = 0; k < rep.lowest_energies.size(); ++k) {
      r.summary["energy_" + std::to_string(k)] = rep.lowest_energies[k];
    }
    r.provenance.convergence_checked = true;
    if (!rep.drifts.empty()) r.provenance.convergence_drift = rep.final_drift();
    return r;
  }

  // Refuses (by throwing ConvergenceRefusal) unless the configured truncation
  // is converged at the hardest coupling g, or the user overrides.
  void gate(const ModelConfig& m, std::optional<double> g, DetectionReport& out) const {
    if (opts_.allow_unconverged) {
      out.provenance.warnings.push_back("convergence check skipped (--allow-unconverged)");
      return;
    }
    if (m.type == "circuit" && m.circuit.modes.empty()) return;  // finite-dimensional, exact
    const auto rep = convergence_at(m, g);
    const std::size_t base = model_truncation(m);
    if (!passes(rep, base)) {
      std::ostringstream msg;
      msg << "truncation " << base << " is not converged (levels=" << rep.levels
          << ", tol=" << format_double(rep.tolerance) << ")";
      if (rep.converged) msg << "; recommended truncation " << rep.recommended_truncation;
      else msg << "; no convergence below max_dim, try truncation >= " << rep.recommended_truncation;
      msg << " (or pass --allow-unconverged)";
      throw ConvergenceRefusal{convergence_report(rep, build_model(m, g)), msg.str()};
    }
    out.provenance.convergence_checked = true;
    if (!rep.drifts.empty()) out.provenance.convergence_drift = rep.drifts.front().empty() ? 0.0 : rep.final_drift();
  }

  DetectionReport spectrum_check() {
    const std::optional<double> g =
        cfg_.scenario.g_grid.empty() ? std::nullopt : std::optional<double>(max_of(cfg_.scenario.g_grid));
    const ModelSystem model = build_model(cfg_.model, g);
    const auto rep = convergence_at(cfg_.model, g);
    DetectionReport r = convergence_report(rep, model);
    if (!passes(rep, model_truncation(cfg_.model))) {
      if (opts_.allow_unconverged) {
        r.provenance.warnings.push_back("requested truncation not converged");
      } else {
        refused_ = true;
      }
    }
    return r;
  }

  DetectionReport ground_test() {
    const ModelSystem model = build_model(cfg_.model);
    DetectionReport r = base_report("ground-test", "table", model);
    gate(cfg_.model, std::nullopt, r);
    auto es = std::make_shared<const EigenSystem>(diagonalize(model));
    const auto xplus = positive_frequency_op(es, coupling_operator(model, coupling_name()), cfg_.response);
    const auto& nop = coupling_operator(model, cfg_.scenario.number_operator);
    const RealVector rates = wideband_rates(xplus);
    r.columns = {{"state", "index", "eigenstate index k (ascending energy)"},
                 {"energy", "omega0", "eigenenergy E_k"},
                 {"parity", "+-1", "excitation parity label (0 if the model has none)"},
                 {"bare_photon_number", "quanta", "<E_k|a^dag a|E_k> (naive predictor)"},
                 {"detection_rate", "chi", "<E_k|x- x+|E_k> with the configured response"}};
    const std::size_t count = std::min(cfg_.scenario.states, es->dim());
    for (std::size_t k = 0; k < count; ++k) {
      r.rows.push_back({static_cast<double>(k), es->energies(static_cast<Eigen::Index>(k)),
                        es->has_parity() ? static_cast<double>(es->parity[k]) : 0.0,
                        bare_photon_number(*es, nop, k), rates(static_cast<Eigen::Index>(k))});
    }
    r.summary["ground_photon_number"] = bare_photon_number(*es, nop, 0);
    r.summary["ground_detection_rate"] = rates(0);
    r.summary["ground_rate_exact_zero"] = rates(0) == 0.0 ? 1.0 : 0.0;
    return r;
  }

  DetectionReport sweep() {
    const auto& grid = cfg_.scenario.g_grid;
    const ModelSystem reference = build_model(cfg_.model, max_of(grid));
    DetectionReport r = base_report("sweep", "table", reference);
    gate(cfg_.model, max_of(grid), r);
    r.columns = {{"g", "omega0", "light-matter coupling"},
                 {"ground_energy", "omega0", "E_0"},
                 {"gap", "omega0", "E_1 - E_0"},
                 {"ground_photon_number", "quanta", "<E_0|a^dag a|E_0>"},
                 {"ground_detection_rate", "chi", "<E_0|x- x+|E_0>"},
                 {"first_excited_detection_rate", "chi", "<E_1|x- x+|E_1>"}};
    r.rows.assign(grid.size(), {});
    const std::string coupling = coupling_name();
    kernels::for_each_index(grid.size(), [&](std::size_t i) {
      const ModelSystem model = build_model(cfg_.model, grid[i]);
      auto es = std::make_shared<const EigenSystem>(diagonalize(model));
      const auto xplus = positive_frequency_op(es, coupling_operator(model, coupling), cfg_.response);
      const auto& nop = coupling_operator(model, cfg_.scenario.number_operator);
      r.rows[i] = {grid[i], es->energies(0), es->energies(1) - es->energies(0), bare_photon_number(*es, nop, 0),
                   wideband_rate(xplus, 0), wideband_rate(xplus, 1)};
    }, opts_.exec);
    return r;
  }

  DetectionReport narrowband() {
    const ModelSystem model = build_model(cfg_.model);
    DetectionReport r = base_report("narrowband", "spectrum", model);
    gate(cfg_.model, std::nullopt, r);
    auto es = std::make_shared<const EigenSystem>(diagonalize(model));
    const auto oplus = wideband_positive_op(es, coupling_operator(model, coupling_name()));
    const auto& grid = cfg_.scenario.omega_grid;
    const std::size_t initial = cfg_.scenario.initial;
    const double g = cfg_.scenario.detector_coupling;
    const double eta = cfg_.scenario.eta;
    const auto rate = narrowband_spectrum(oplus, initial, g, grid, eta, opts_.exec);
    r.provenance.eta = eta;
    r.provenance.response = "narrow-band absorber, coupling g=" + format_double(g);
    r.columns = {{"omega_d", "omega0", "detector frequency"},
                 {"rate", "omega0", "2 pi g^2 sum_k |O+_ki|^2 L_eta(omega_d - (E_i - E_k))"}};
    for (std::size_t i = 0; i < grid.size(); ++i) r.rows.push_back({grid[i], rate[i]});
    r.summary["initial_state"] = static_cast<double>(initial);
    r.summary["initial_energy"] = es->energies(static_cast<Eigen::Index>(initial));
    r.summary["total_weight"] = narrowband_total_weight(oplus, initial, g);
    r.summary["band_weight"] = narrowband_band_weight(oplus, initial, g, grid.front(), grid.back(), eta);
    return r;
  }

  DetectionReport shorttime() {
    const ModelSystem model = build_model(cfg_.model);
    DetectionReport r = base_report("shorttime", "time-series", model);
    gate(cfg_.model, std::nullopt, r);
    auto es = std::make_shared<const EigenSystem>(diagonalize(model));
    const auto x = eigenbasis_op(es, coupling_operator(model, cfg_.scenario.operator_name));
    const AbsorberModeSet absorbers(absorbers_or_default(cfg_, model.energy_scale));
    const std::size_t initial = cfg_.scenario.initial;
    std::vector<double> times = cfg_.scenario.t_grid;
    if (times.empty()) {
      std::vector<std::string> unused;
      times = expand_grid({{"start", 1e-3}, {"stop", 1e2}, {"count", 51}, {"spacing", "log"}}, "t_grid", unused);
    }
    const auto p = shorttime_series(x, absorbers, initial, times, opts_.exec);
    r.provenance.eta = cfg_.scenario.eta;
    r.provenance.coupling_operator = cfg_.scenario.operator_name;
    r.provenance.response = "discrete absorber modes (" + std::to_string(absorbers.modes().size()) + ")";
    r.columns = {{"t", "1/omega0", "time since the coupling was switched on"},
                 {"probability", "1", "first-order absorption probability P(t)"}};
    for (std::size_t i = 0; i < times.size(); ++i) r.rows.push_back({times[i], p[i]});

    const double prefactor = shorttime_prefactor(x, absorbers, initial);
    const double fastest = max_channel_frequency(x, absorbers, initial);
    r.summary["initial_state"] = static_cast<double>(initial);
    r.summary["quadratic_prefactor"] = prefactor;
    r.summary["max_channel_frequency"] = fastest;
    r.summary["longtime_rate"] = longtime_rate(x, absorbers, initial, cfg_.scenario.eta);
    if (prefactor > 0.0 && fastest > 0.0) {
      const auto window = early_time_window(fastest);
      const auto early = shorttime_series(x, absorbers, initial, window, opts_.exec);
      const auto fit = fit_power_law(window, early);
      r.summary["early_time_exponent"] = fit.exponent;
      r.summary["early_time_prefactor"] = fit.prefactor;
    }
    if (!p.empty() && *std::max_element(p.begin(), p.end()) > kPerturbativeLimit) {
      r.provenance.warnings.push_back("P(t) exceeds 0.1; first-order perturbation theory is unreliable there");
    }
    return r;
  }

  DetectionReport jc_vs_rabi() {
    const auto& grid = cfg_.scenario.g_grid;
    ModelConfig rabi_cfg = cfg_.model;
    rabi_cfg.type = "rabi";
    ModelConfig jc_cfg = cfg_.model;
    jc_cfg.type = "jc";
    const ModelSystem reference = build_model(rabi_cfg, max_of(grid));
    DetectionReport r = base_report("jc-vs-rabi", "table", reference);
    r.model_kind = "rabi+jc";
    r.model_params.erase("g");
    gate(rabi_cfg, max_of(grid), r);
    gate(jc_cfg, max_of(grid), r);
    const AbsorberModeSet absorbers(absorbers_or_default(cfg_, reference.energy_scale));
    r.columns = {{"g", "omega0", "light-matter coupling"},
                 {"rabi_ground_photon_number", "quanta", "Rabi <E_0|a^dag a|E_0>"},
                 {"jc_ground_photon_number", "quanta", "JC <E_0|a^dag a|E_0>"},
                 {"rabi_ground_detection_rate", "chi", "Rabi <E_0|x- x+|E_0>"},
                 {"jc_ground_detection_rate", "chi", "JC <E_0|x- x+|E_0>"},
                 {"rabi_shorttime_prefactor", "omega0^2", "Rabi lim P(t)/t^2 from E_0"},
                 {"jc_shorttime_prefactor", "omega0^2", "JC lim P(t)/t^2 from E_0"}};
    r.rows.assign(grid.size(), {});
    const std::string coupling = coupling_name();
    const std::string op_name = cfg_.scenario.operator_name;
    kernels::for_each_index(grid.size(), [&](std::size_t i) {
      std::vector<double> row{grid[i]};
      double values[2][3];
      int which = 0;
      for (const ModelConfig* mc : {&rabi_cfg, &jc_cfg}) {
        const ModelSystem model = build_model(*mc, grid[i]);
        auto es = std::make_shared<const EigenSystem>(diagonalize(model));
        const auto xplus = positive_frequency_op(es, coupling_operator(model, coupling), cfg_.response);
        const auto x = eigenbasis_op(es, coupling_operator(model, op_name));
        values[which][0] = bare_photon_number(*es, coupling_operator(model, cfg_.scenario.number_operator), 0);
        values[which][1] = wideband_rate(xplus, 0);
        values[which][2] = shorttime_prefactor(x, absorbers, 0);
        ++which;
      }
      for (int q = 0; q < 3; ++q) {
        row.push_back(values[0][q]);
        row.push_back(values[1][q]);
      }
      r.rows[i] = std::move(row);
    }, opts_.exec);
    return r;
  }
};

}  // namespace

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  if (name == "spectrum-check") return ScenarioKind::spectrum_check;
  if (name == "ground-test") return ScenarioKind::ground_test;
  if (name == "sweep") return ScenarioKind::sweep;
  if (name == "narrowband" || name == "spectrum") return ScenarioKind::narrowband;
  if (name == "shorttime") return ScenarioKind::shorttime;
  if (name == "jc-vs-rabi") return ScenarioKind::jc_vs_rabi;
  return std::nullopt;
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::spectrum_check: return "spectrum-check";
    case ScenarioKind::ground_test: return "ground-test";
    case ScenarioKind::sweep: return "sweep";
    case ScenarioKind::narrowband: return "narrowband";
    case ScenarioKind::shorttime: return "shorttime";
    case ScenarioKind::jc_vs_rabi: return "jc-vs-rabi";
  }
  return {};
}

std::size_t model_truncation(const ModelConfig& model) {
  if (model.type == "circuit") return model.circuit.modes.empty() ? 0 : model.circuit.modes.front().truncation;
  return model.n_fock;
}

std::size_t model_dimension(const ModelConfig& model) {
  if (model.type != "circuit") return 2 * model.n_fock;
  std::size_t dim = std::size_t{1} << model.circuit.qubits.size();
  for (const auto& m : model.circuit.modes) dim *= m.truncation;
  return dim;
}

ModelSystem build_model(const ModelConfig& model, std::optional<double> g, std::optional<std::size_t> truncation) {
  if (model.type == "rabi" || model.type == "jc") {
    const std::size_t n = truncation.value_or(model.n_fock);
    const double coupling = g.value_or(model.g);
    return model.type == "rabi" ? build_rabi(model.omega0, model.omega_a, coupling, n)
                                : build_jc(model.omega0, model.omega_a, coupling, n);
  }
  if (model.type == "circuit") {
    CircuitSpec spec = model.circuit;
    if (truncation && !spec.modes.empty()) {
      // Scale every mode's cutoff by the same factor as mode 0.
      const std::size_t base = spec.modes.front().truncation;
      for (auto& m : spec.modes) m.truncation = std::max<std::size_t>(2, m.truncation * *truncation / base);
    }
    if (g) {
      for (auto& q : spec.qubits) {
        for (auto& c : q.couplings) c.strength = *g;
      }
    }
    return build_circuit(spec);
  }
  throw ParameterError("unknown model type '" + model.type + "'");
}

void validate_for(ScenarioKind kind, const ScenarioConfig& cfg) {
  std::vector<std::string> issues;
  const auto& sc = cfg.scenario;
  if (sc.name && parse_scenario_kind(*sc.name) != kind) {
    issues.push_back("scenario.name: '" + *sc.name + "' does not match subcommand '" +
                     std::string(scenario_name(kind)) + "'");
  }
  const bool single_mode = cfg.model.type == "rabi" || cfg.model.type == "jc";
  if ((kind == ScenarioKind::sweep || kind == ScenarioKind::jc_vs_rabi) && sc.g_grid.empty()) {
    issues.push_back("scenario.g_grid: required for " + std::string(scenario_name(kind)));
  }
  if (kind == ScenarioKind::jc_vs_rabi && !single_mode) {
    issues.push_back("model.type: jc-vs-rabi needs a rabi or jc model");
  }
  if (kind == ScenarioKind::sweep && cfg.model.type == "circuit" && cfg.model.circuit.qubits.empty()) {
    issues.push_back("model: a circuit sweep varies qubit couplings, but the circuit has no qubits");
  }
  if (kind == ScenarioKind::narrowband && sc.omega_grid.empty()) {
    issues.push_back("scenario.omega_grid: required for narrowband");
  }
  if (kind != ScenarioKind::spectrum_check) {
    const std::size_t dim = model_dimension(cfg.model);
    if (sc.initial >= dim) {
      issues.push_back("scenario.initial: index " + std::to_string(sc.initial) + " exceeds dimension " +
                       std::to_string(dim));
    }
    if (cfg.model.type == "circuit" && cfg.model.circuit.modes.empty() &&
        (kind != ScenarioKind::ground_test || !sc.coupling)) {
      issues.push_back("model: scenario needs at least one circuit mode");
    }
  }
  if (kind != ScenarioKind::spectrum_check && model_truncation(cfg.model) != 0 && model_truncation(cfg.model) < 4 &&
      !cfg.model.circuit.modes.empty()) {
    issues.push_back("model.modes[0].truncation: must be at least 4 for the convergence check");
  }
  if (issues.empty() && !(cfg.model.type == "circuit" && cfg.model.circuit.modes.empty())) {
    try {
      const auto names = known_operators(cfg.model);
      const auto require_op = [&](const std::string& name, const std::string& key) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
          std::string list;
          for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
          issues.push_back(key + ": unknown operator '" + name + "' (available: " + list + ")");
        }
      };
      const std::string coupling = sc.coupling.value_or(default_coupling(cfg.model));
      if (kind != ScenarioKind::shorttime && kind != ScenarioKind::spectrum_check) require_op(coupling, "scenario.coupling");
      if (kind == ScenarioKind::ground_test || kind == ScenarioKind::sweep || kind == ScenarioKind::jc_vs_rabi) {
        require_op(sc.number_operator, "scenario.number_operator");
      }
      if (kind == ScenarioKind::shorttime || kind == ScenarioKind::jc_vs_rabi) {
        require_op(sc.operator_name, "scenario.operator");
      }
      if (coupling == "annihilation" && kind != ScenarioKind::shorttime && kind != ScenarioKind::spectrum_check) {
        issues.push_back("scenario.coupling: the detector coupling must be a Hermitian operator");
      }
    } catch (const std::exception& e) {
      issues.push_back(std::string("model: ") + e.what());
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
}

RunResult run(ScenarioKind kind, const ScenarioConfig& config, const RunOptions& options) {
  RunResult result;
  try {
    validate_for(kind, config);
    Runner runner(config, options);
    result.reports = runner.run(kind);
    for (const auto& r : result.reports) validate_report(r);
    if (runner.refused()) {
      result.exit_code = exit_code::convergence_refusal;
      result.message = "requested truncation is not converged; see recommended_truncation in the report";
    }
  } catch (const ConfigError& e) {
    result = {exit_code::config_error, {}, e.what()};
  } catch (const ConvergenceRefusal& refusal) {
    result = {exit_code::convergence_refusal, {refusal.report}, refusal.message};
  } catch (const ParameterError& e) {
    result = {exit_code::config_error, {}, e.what()};
  } catch (const LookupError& e) {
    result = {exit_code::config_error, {}, e.what()};
  } catch (const std::exception& e) {
    result = {exit_code::numerical_failure, {}, e.what()};
  }
  return result;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("power-law fit needs >= 2 paired points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw ParameterError("power-law fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept)};
}

std::vector<double> early_time_window(double max_frequency, double lo, double hi, std::size_t count) {
  if (!(max_frequency > 0.0)) throw ParameterError("early-time window needs a positive frequency");
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    t[i] = std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo))) / max_frequency;
  }
  t.front() = lo / max_frequency;
  return t;
}

}  // namespace photodet
