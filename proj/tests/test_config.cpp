#include "photodet/config.hpp"
#include "photodet/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace photodet;
using nlohmann::json;

namespace {

std::vector<std::string> issues_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<std::string>& issues, const std::string& key) {
  return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) { return s.find(key) != std::string::npos; });
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
  const auto cfg = parse_config(json::parse(R"({"schema_version": 1, "model": {"type": "rabi", "g": 0.5}})"));
  CHECK(cfg.model.type == "rabi");
  CHECK(cfg.model.omega0 == 1.0);
  CHECK(cfg.model.n_fock == 40);
  CHECK(cfg.response == DetectorResponse::flat(1.0));
  CHECK(cfg.scenario.eta == 1e-2);
  CHECK(cfg.output.formats == std::vector<std::string>{"json"});
}

TEST_CASE("full config") {
  const auto cfg = parse_config(json::parse(R"({
    "schema_version": 1,
    "model": {"type": "jc", "omega0": 1.0, "omega_a": 0.9, "g": 0.2, "n_fock": 30},
    "response": {"kind": "tabulated", "omega": [0.1, 1.0, 5.0], "chi": [0.0, 1.0, 2.0]},
    "scenario": {"name": "sweep", "coupling": "quadrature", "g_grid": {"start": 0, "stop": 1, "count": 11},
                 "omega_grid": [0.5, 1.0, 1.5], "t_grid": {"start": 1e-3, "stop": 10, "count": 5, "spacing": "log"},
                 "eta": 1e-3, "initial": 2, "detector_coupling": 0.1,
                 "absorbers": [{"frequency": 1.0, "coupling": 0.01}],
                 "convergence": {"levels": 4, "tolerance": 1e-9, "max_dim": 1024}},
    "output": {"dir": "out", "formats": ["json", "csv"], "basename": "run"}
  })"));
  CHECK(cfg.scenario.g_grid.size() == 11);
  CHECK(cfg.scenario.g_grid.front() == 0.0);
  CHECK(cfg.scenario.g_grid.back() == 1.0);
  CHECK(cfg.scenario.t_grid.front() == 1e-3);
  CHECK(cfg.scenario.t_grid.back() == 10.0);
  CHECK(cfg.scenario.t_grid[2] == doctest::Approx(0.1));
  CHECK(cfg.response.kind() == DetectorResponse::Kind::tabulated);
  CHECK(cfg.scenario.convergence.max_dim == 1024);
  CHECK(cfg.output.basename == "run");
}

TEST_CASE("circuit config") {
  const auto cfg = parse_config(json::parse(R"({
    "schema_version": 1,
    "model": {"type": "circuit",
              "modes": [{"frequency": 1.0, "flux_zpf": 0.5, "truncation": 20}],
              "qubits": [{"frequency": 1.2, "couplings": [{"mode": 0, "axis": "x", "strength": 0.3}]}],
              "coupling_inductance": 5.0}
  })"));
  CHECK(cfg.model.circuit.modes.size() == 1);
  CHECK(cfg.model.circuit.qubits.at(0).couplings.at(0).axis == PauliAxis::x);
  CHECK(cfg.model.circuit.coupling_inductance == 5.0);
}

TEST_CASE("every problem is reported at once") {
  const auto issues = issues_of(json::parse(R"({
    "schema_version": 1,
    "model": {"type": "rabi", "omega0": -1, "gg": 0.5, "n_fock": 2},
    "scenario": {"eta": 0, "omega_grid": [1.0, 0.5], "frobnicate": true},
    "output": {"formats": ["xml"]}
  })"));
  CHECK(mentions(issues, "model.omega0"));
  CHECK(mentions(issues, "gg"));
  CHECK(mentions(issues, "n_fock"));
  CHECK(mentions(issues, "scenario.eta"));
  CHECK(mentions(issues, "omega_grid"));
  CHECK(mentions(issues, "frobnicate"));
  CHECK(mentions(issues, "xml"));
  CHECK(issues.size() >= 7);
}

TEST_CASE("schema version and types") {
  CHECK(mentions(issues_of(json::parse(R"({"model": {"type": "rabi"}})")), "schema_version"));
  CHECK(mentions(issues_of(json::parse(R"({"schema_version": 2, "model": {"type": "rabi"}})")), "schema_version"));
  CHECK(mentions(issues_of(json::parse(R"({"schema_version": 1, "model": {"type": "dicke"}})")), "model.type"));
  CHECK(mentions(issues_of(json::parse(R"({"schema_version": 1, "model": {"type": "rabi", "g": "big"}})")),
                 "model.g"));
  CHECK(mentions(issues_of(json::parse(R"({"schema_version": 1})")), "model"));
  CHECK(mentions(issues_of(json::parse("[1, 2]")), "object"));
  CHECK(mentions(issues_of(json::parse(R"({"schema_version": 1, "model": {"type": "rabi"}, "scenario": {"name": "sweeep"}})")),
                 "scenario.name"));
}

TEST_CASE("circuit problems") {
  const auto issues = issues_of(json::parse(R"({
    "schema_version": 1,
    "model": {"type": "circuit",
              "modes": [{"frequency": 0, "truncation": 1}],
              "qubits": [{"frequency": 1.0, "couplings": [{"mode": 4, "axis": "w", "strength": 0.1}]}],
              "internal_couplings": [{"a": "x0", "b": "sq7", "strength": 0.1}]}
  })"));
  CHECK(mentions(issues, "frequency"));
  CHECK(mentions(issues, "truncation"));
  CHECK(mentions(issues, "axis"));
  CHECK(mentions(issues, "mode"));
  CHECK(mentions(issues, "sq7"));
}

TEST_CASE("grids") {
  std::vector<std::string> issues;
  CHECK(expand_grid(json::parse("[0.1, 0.2]"), "g", issues) == std::vector<double>{0.1, 0.2});
  CHECK(expand_grid(json::parse(R"({"start": 1, "stop": 3, "count": 3})"), "g", issues) ==
        std::vector<double>{1.0, 2.0, 3.0});
  CHECK(issues.empty());
  expand_grid(json::parse(R"({"start": 0, "stop": 3, "count": 3, "spacing": "log"})"), "g", issues);
  CHECK_FALSE(issues.empty());
  issues.clear();
  expand_grid(json::parse(R"([1.0, "x"])"), "g", issues);
  CHECK_FALSE(issues.empty());
}

TEST_CASE("load_config reports file problems") {
  CHECK_THROWS(load_config("/nonexistent/config.json"));
}
