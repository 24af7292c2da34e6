#include "photodet/config.hpp"

#include "photodet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace photodet {

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& i : issues) msg += "\n  - " + i;
        return msg;
      }()),
      issues_(std::move(issues)) {}

namespace {

using nlohmann::json;

// Collects problems instead of stopping at the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  bool object(const json& j, const std::string& where) {
    if (!j.is_object()) {
      issues_.push_back(where + ": expected an object");
      return false;
    }
    return true;
  }

  void allowed(const json& j, const std::string& where, const std::set<std::string>& keys) {
    for (const auto& [k, v] : j.items()) {
      if (!keys.count(k)) issues_.push_back(where + "." + k + ": unknown key");
    }
  }

  template <typename T>
  std::optional<T> get(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    const std::string path = where + "." + key;
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) return bad(path, "expected a number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) return bad(path, "must be finite");
      return d;
    } else if constexpr (std::is_same_v<T, std::size_t>) {
      if (!v.is_number_integer() || v.get<long long>() < 0) return bad(path, "expected a non-negative integer");
      return v.get<std::size_t>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) return bad(path, "expected an integer");
      return v.get<int>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) return bad(path, "expected true or false");
      return v.get<bool>();
    } else {
      if (!v.is_string()) return bad(path, "expected a string");
      return v.get<std::string>();
    }
  }

  template <typename T>
  void into(const json& j, const std::string& key, const std::string& where, T& target) {
    if (auto v = get<T>(j, key, where)) target = *v;
  }

  void issue(std::string msg) { issues_.push_back(std::move(msg)); }

 private:
  std::nullopt_t bad(const std::string& path, const std::string& msg) {
    issues_.push_back(path + ": " + msg);
    return std::nullopt;
  }

  std::vector<std::string>& issues_;
};

std::optional<PauliAxis> parse_axis(const std::string& s) {
  if (s == "x") return PauliAxis::x;
  if (s == "y") return PauliAxis::y;
  if (s == "z") return PauliAxis::z;
  return std::nullopt;
}

void parse_circuit(const json& m, Reader& rd, CircuitSpec& spec) {
  if (m.contains("modes")) {
    if (!m.at("modes").is_array()) {
      rd.issue("model.modes: expected an array");
    } else {
      for (std::size_t i = 0; i < m.at("modes").size(); ++i) {
        const json& jm = m.at("modes")[i];
        const std::string where = "model.modes[" + std::to_string(i) + "]";
        if (!rd.object(jm, where)) continue;
        rd.allowed(jm, where, {"frequency", "flux_zpf", "truncation"});
        CircuitMode mode;
        rd.into(jm, "frequency", where, mode.frequency);
        rd.into(jm, "flux_zpf", where, mode.flux_zpf);
        rd.into(jm, "truncation", where, mode.truncation);
        if (!(mode.frequency > 0.0)) rd.issue(where + ".frequency: must be positive");
        if (mode.truncation < 2) rd.issue(where + ".truncation: must be at least 2");
        spec.modes.push_back(mode);
      }
    }
  }
  if (m.contains("qubits")) {
    if (!m.at("qubits").is_array()) {
      rd.issue("model.qubits: expected an array");
    } else {
      for (std::size_t i = 0; i < m.at("qubits").size(); ++i) {
        const json& jq = m.at("qubits")[i];
        const std::string where = "model.qubits[" + std::to_string(i) + "]";
        if (!rd.object(jq, where)) continue;
        rd.allowed(jq, where, {"frequency", "couplings"});
        CircuitQubit qubit;
        rd.into(jq, "frequency", where, qubit.frequency);
        if (!(qubit.frequency > 0.0)) rd.issue(where + ".frequency: must be positive");
        if (jq.contains("couplings")) {
          if (!jq.at("couplings").is_array()) {
            rd.issue(where + ".couplings: expected an array");
          } else {
            for (std::size_t c = 0; c < jq.at("couplings").size(); ++c) {
              const json& jc = jq.at("couplings")[c];
              const std::string cw = where + ".couplings[" + std::to_string(c) + "]";
              if (!rd.object(jc, cw)) continue;
              rd.allowed(jc, cw, {"mode", "axis", "strength"});
              QubitCoupling coupling;
              rd.into(jc, "mode", cw, coupling.mode);
              rd.into(jc, "strength", cw, coupling.strength);
              if (auto axis = rd.get<std::string>(jc, "axis", cw)) {
                if (auto a = parse_axis(*axis)) coupling.axis = *a;
                else rd.issue(cw + ".axis: expected x, y or z");
              }
              qubit.couplings.push_back(coupling);
            }
          }
        }
        spec.qubits.push_back(qubit);
      }
    }
  }
  if (m.contains("internal_couplings")) {
    if (!m.at("internal_couplings").is_array()) {
      rd.issue("model.internal_couplings: expected an array");
    } else {
      for (std::size_t i = 0; i < m.at("internal_couplings").size(); ++i) {
        const json& ji = m.at("internal_couplings")[i];
        const std::string where = "model.internal_couplings[" + std::to_string(i) + "]";
        if (!rd.object(ji, where)) continue;
        rd.allowed(ji, where, {"a", "b", "strength"});
        InternalCoupling c;
        rd.into(ji, "a", where, c.a);
        rd.into(ji, "b", where, c.b);
        rd.into(ji, "strength", where, c.strength);
        spec.internal.push_back(c);
      }
    }
  }
  if (auto l = rd.get<double>(m, "coupling_inductance", "model")) spec.coupling_inductance = *l;
  rd.into(m, "include_flux_self_term", "model", spec.include_flux_self_term);
  if (spec.modes.empty() && spec.qubits.empty()) rd.issue("model: circuit needs modes or qubits");
  // Operator names are resolved on a minimal probe space (truncation 2 per mode).
  if (!spec.modes.empty() || !spec.qubits.empty()) {
    const HilbertSpace probe(std::vector<std::size_t>(spec.modes.size(), 2), spec.qubits.size());
    for (std::size_t i = 0; i < spec.internal.size(); ++i) {
      for (const auto* name : {&spec.internal[i].a, &spec.internal[i].b}) {
        try {
          (void)circuit_operator(probe, *name);
        } catch (const std::exception& e) {
          rd.issue("model.internal_couplings[" + std::to_string(i) + "]: " + e.what());
        }
      }
    }
    for (std::size_t q = 0; q < spec.qubits.size(); ++q) {
      for (const auto& c : spec.qubits[q].couplings) {
        if (c.mode >= spec.modes.size()) {
          rd.issue("model.qubits[" + std::to_string(q) + "]: coupling refers to a missing mode");
        }
      }
    }
  }
}

void parse_model(const json& m, Reader& rd, ModelConfig& model) {
  if (!rd.object(m, "model")) return;
  rd.into(m, "type", "model", model.type);
  if (model.type == "rabi" || model.type == "jc") {
    rd.allowed(m, "model", {"type", "omega0", "omega_a", "g", "n_fock"});
    rd.into(m, "omega0", "model", model.omega0);
    rd.into(m, "omega_a", "model", model.omega_a);
    rd.into(m, "g", "model", model.g);
    rd.into(m, "n_fock", "model", model.n_fock);
    if (!(model.omega0 > 0.0)) rd.issue("model.omega0: must be positive");
    if (!(model.omega_a >= 0.0)) rd.issue("model.omega_a: must be non-negative");
    if (!(model.g >= 0.0)) rd.issue("model.g: must be non-negative");
    if (model.n_fock < 4) rd.issue("model.n_fock: must be at least 4");
  } else if (model.type == "circuit") {
    rd.allowed(m, "model", {"type", "modes", "qubits", "internal_couplings", "coupling_inductance",
                            "include_flux_self_term"});
    parse_circuit(m, rd, model.circuit);
  } else {
    rd.issue("model.type: expected rabi, jc or circuit");
  }
}

std::optional<DetectorResponse> parse_response(const json& r, Reader& rd) {
  if (!rd.object(r, "response")) return std::nullopt;
  std::string kind = "flat";
  rd.into(r, "kind", "response", kind);
  try {
    if (kind == "flat") {
      rd.allowed(r, "response", {"kind", "chi0"});
      double chi0 = 1.0;
      rd.into(r, "chi0", "response", chi0);
      return DetectorResponse::flat(chi0);
    }
    if (kind == "ohmic") {
      rd.allowed(r, "response", {"kind", "chi0", "omega_ref"});
      double chi0 = 1.0;
      double omega_ref = 1.0;
      rd.into(r, "chi0", "response", chi0);
      rd.into(r, "omega_ref", "response", omega_ref);
      return DetectorResponse::ohmic(chi0, omega_ref);
    }
    if (kind == "tabulated") {
      rd.allowed(r, "response", {"kind", "omega", "chi"});
      if (!r.contains("omega") || !r.contains("chi") || !r.at("omega").is_array() || !r.at("chi").is_array()) {
        rd.issue("response: tabulated response needs 'omega' and 'chi' arrays");
        return std::nullopt;
      }
      std::vector<double> omega;
      std::vector<double> chi;
      for (const auto& v : r.at("omega")) omega.push_back(v.is_number() ? v.get<double>() : NAN);
      for (const auto& v : r.at("chi")) chi.push_back(v.is_number() ? v.get<double>() : NAN);
      return DetectorResponse::tabulated(std::move(omega), std::move(chi));
    }
    rd.issue("response.kind: expected flat, ohmic or tabulated");
  } catch (const ParameterError& e) {
    rd.issue(std::string("response: ") + e.what());
  }
  return std::nullopt;
}

void parse_scenario(const json& s, Reader& rd, ScenarioSettings& sc, std::vector<std::string>& issues) {
  if (!rd.object(s, "scenario")) return;
  rd.allowed(s, "scenario", {"name", "coupling", "number_operator", "operator", "states", "g_grid", "omega_grid",
                             "t_grid", "eta", "initial", "detector_coupling", "absorbers", "convergence"});
  if (auto v = rd.get<std::string>(s, "name", "scenario")) {
    static const std::vector<std::string> known{"spectrum-check", "ground-test", "sweep", "narrowband",
                                                "spectrum",       "shorttime",   "jc-vs-rabi"};
    if (std::find(known.begin(), known.end(), *v) == known.end()) rd.issue("scenario.name: unknown scenario '" + *v + "'");
    sc.name = *v;
  }
  if (auto v = rd.get<std::string>(s, "coupling", "scenario")) sc.coupling = *v;
  rd.into(s, "number_operator", "scenario", sc.number_operator);
  rd.into(s, "operator", "scenario", sc.operator_name);
  rd.into(s, "states", "scenario", sc.states);
  rd.into(s, "eta", "scenario", sc.eta);
  rd.into(s, "initial", "scenario", sc.initial);
  rd.into(s, "detector_coupling", "scenario", sc.detector_coupling);
  if (sc.states == 0) rd.issue("scenario.states: must be at least 1");
  if (!(sc.eta > 0.0)) rd.issue("scenario.eta: must be positive");

  if (s.contains("g_grid")) {
    sc.g_grid = expand_grid(s.at("g_grid"), "scenario.g_grid", issues);
    for (double g : sc.g_grid) {
      if (g < 0.0) { rd.issue("scenario.g_grid: couplings must be non-negative"); break; }
    }
  }
  if (s.contains("omega_grid")) {
    sc.omega_grid = expand_grid(s.at("omega_grid"), "scenario.omega_grid", issues);
    for (std::size_t i = 0; i < sc.omega_grid.size(); ++i) {
      if (!(sc.omega_grid[i] > 0.0)) { rd.issue("scenario.omega_grid: frequencies must be positive"); break; }
      if (i > 0 && !(sc.omega_grid[i] > sc.omega_grid[i - 1])) {
        rd.issue("scenario.omega_grid: must be strictly increasing");
        break;
      }
    }
  }
  if (s.contains("t_grid")) {
    sc.t_grid = expand_grid(s.at("t_grid"), "scenario.t_grid", issues);
    for (std::size_t i = 0; i < sc.t_grid.size(); ++i) {
      if (!(sc.t_grid[i] >= 0.0)) { rd.issue("scenario.t_grid: times must be non-negative"); break; }
      if (i > 0 && !(sc.t_grid[i] > sc.t_grid[i - 1])) {
        rd.issue("scenario.t_grid: must be strictly increasing");
        break;
      }
    }
  }
  if (s.contains("absorbers")) {
    if (!s.at("absorbers").is_array()) {
      rd.issue("scenario.absorbers: expected an array");
    } else {
      for (std::size_t i = 0; i < s.at("absorbers").size(); ++i) {
        const json& a = s.at("absorbers")[i];
        const std::string where = "scenario.absorbers[" + std::to_string(i) + "]";
        if (!rd.object(a, where)) continue;
        rd.allowed(a, where, {"frequency", "coupling"});
        AbsorberMode mode;
        rd.into(a, "frequency", where, mode.frequency);
        rd.into(a, "coupling", where, mode.coupling);
        if (!(mode.frequency > 0.0)) rd.issue(where + ".frequency: must be positive");
        sc.absorbers.push_back(mode);
      }
    }
  }
  if (s.contains("convergence")) {
    const json& c = s.at("convergence");
    if (rd.object(c, "scenario.convergence")) {
      rd.allowed(c, "scenario.convergence", {"levels", "tolerance", "max_dim"});
      rd.into(c, "levels", "scenario.convergence", sc.convergence.levels);
      rd.into(c, "tolerance", "scenario.convergence", sc.convergence.tolerance);
      rd.into(c, "max_dim", "scenario.convergence", sc.convergence.max_dim);
      if (sc.convergence.levels == 0) rd.issue("scenario.convergence.levels: must be at least 1");
      if (!(sc.convergence.tolerance > 0.0)) rd.issue("scenario.convergence.tolerance: must be positive");
    }
  }
}

void parse_output(const json& o, Reader& rd, OutputConfig& out) {
  if (!rd.object(o, "output")) return;
  rd.allowed(o, "output", {"dir", "formats", "basename"});
  rd.into(o, "dir", "output", out.dir);
  if (auto b = rd.get<std::string>(o, "basename", "output")) out.basename = *b;
  if (o.contains("formats")) {
    out.formats.clear();
    if (!o.at("formats").is_array()) {
      rd.issue("output.formats: expected an array");
    } else {
      for (const auto& f : o.at("formats")) {
        if (!f.is_string() || (f.get<std::string>() != "json" && f.get<std::string>() != "csv")) {
          rd.issue("output.formats: unsupported format " + f.dump() + " (expected \"json\" or \"csv\")");
        } else {
          out.formats.push_back(f.get<std::string>());
        }
      }
    }
  }
}

}  // namespace

std::vector<double> expand_grid(const json& spec, const std::string& where, std::vector<std::string>& issues) {
  std::vector<double> out;
  if (spec.is_array()) {
    for (const auto& v : spec) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        issues.push_back(where + ": entries must be finite numbers");
        return {};
      }
      out.push_back(v.get<double>());
    }
    if (out.empty()) issues.push_back(where + ": grid is empty");
    return out;
  }
  Reader rd(issues);
  if (!rd.object(spec, where)) return {};
  rd.allowed(spec, where, {"start", "stop", "count", "spacing"});
  const auto start = rd.get<double>(spec, "start", where);
  const auto stop = rd.get<double>(spec, "stop", where);
  const auto count = rd.get<std::size_t>(spec, "count", where);
  std::string spacing = "linear";
  rd.into(spec, "spacing", where, spacing);
  if (!start || !stop || !count) {
    issues.push_back(where + ": needs start, stop and count");
    return {};
  }
  if (*count == 0 || *count > 1000000) {
    issues.push_back(where + ".count: must be between 1 and 1e6");
    return {};
  }
  if (spacing != "linear" && spacing != "log") {
    issues.push_back(where + ".spacing: expected linear or log");
    return {};
  }
  if (spacing == "log" && !(*start > 0.0 && *stop > 0.0)) {
    issues.push_back(where + ": log spacing needs positive start and stop");
    return {};
  }
  out.resize(*count);
  for (std::size_t i = 0; i < *count; ++i) {
    const double u = *count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(*count - 1);
    out[i] = spacing == "linear" ? *start + u * (*stop - *start)
                                 : std::exp(std::log(*start) + u * (std::log(*stop) - std::log(*start)));
  }
  out.front() = *start;
  if (*count > 1) out.back() = *stop;
  return out;
}

ScenarioConfig parse_config(const json& doc) {
  std::vector<std::string> issues;
  Reader rd(issues);
  ScenarioConfig cfg;
  if (!rd.object(doc, "config")) throw ConfigError(issues);
  rd.allowed(doc, "config", {"schema_version", "model", "response", "scenario", "output"});
  if (auto v = rd.get<int>(doc, "schema_version", "config")) {
    cfg.schema_version = *v;
    if (*v != kSchemaVersion) issues.push_back("config.schema_version: unsupported version " + std::to_string(*v));
  } else if (!doc.contains("schema_version")) {
    issues.push_back("config.schema_version: missing");
  }
  if (doc.contains("model")) parse_model(doc.at("model"), rd, cfg.model);
  else issues.push_back("config.model: missing");
  if (doc.contains("response")) {
    if (auto r = parse_response(doc.at("response"), rd)) cfg.response = *r;
  }
  if (doc.contains("scenario")) parse_scenario(doc.at("scenario"), rd, cfg.scenario, issues);
  if (doc.contains("output")) parse_output(doc.at("output"), rd, cfg.output);
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file '" + path.string() + "'"});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  return parse_config(doc);
}

}  // namespace photodet
