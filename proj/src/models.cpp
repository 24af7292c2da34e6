#include "photodet/models.hpp"

#include "photodet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace photodet {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

void check_single_mode_params(double omega0, double omega_a, double g, std::size_t n_fock) {
  require(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be positive");
  require(std::isfinite(omega_a) && omega_a >= 0.0, "omega_a must be non-negative");
  require(std::isfinite(g) && g >= 0.0, "g must be non-negative");
  require(n_fock >= 2, "n_fock must be at least 2");
}

void check_hermitian(const ModelSystem& model) {
  const double defect = model.hamiltonian.hermiticity_defect();
  if (defect > kHermitianTol) {
    throw ValidationError("Hamiltonian is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  for (const auto& [name, op] : model.coupling_ops) {
    if (!(op.space() == model.space)) throw IncompatibleSpaceError("coupling op '" + name + "' space mismatch");
  }
}

ModelSystem single_mode_model(std::string kind, double omega0, double omega_a, double g,
                              std::size_t n_fock, bool rotating_wave) {
  check_single_mode_params(omega0, omega_a, g, n_fock);
  HilbertSpace space = make_space({n_fock}, 1);
  const auto a = annihilation_op(space, 0);
  const auto ad = adjoint(a);
  const auto n = number_op(space, 0);
  const auto quadrature = a + ad;
  const auto sz = pauli_op(space, 0, PauliAxis::z);

  OperatorMatrix h = omega0 * n + (0.5 * omega_a) * sz;
  if (rotating_wave) {
    const auto sm = pauli_op(space, 0, PauliAxis::minus);
    const auto sp = pauli_op(space, 0, PauliAxis::plus);
    h = h + g * (sm * ad + sp * a);
  } else {
    h = h + g * (pauli_op(space, 0, PauliAxis::x) * quadrature);
  }

  ModelSystem model{std::move(kind), space, std::move(h), {}, excitation_parity(space), {}, omega0};
  model.coupling_ops.emplace("quadrature", quadrature);
  model.coupling_ops.emplace("vector_potential", quadrature);
  model.coupling_ops.emplace("photon_number", n);
  model.coupling_ops.emplace("annihilation", a);
  model.coupling_ops.emplace("sigma_x", pauli_op(space, 0, PauliAxis::x));
  model.params = {{"omega0", omega0}, {"omega_a", omega_a}, {"g", g},
                  {"n_fock", static_cast<double>(n_fock)}};
  check_hermitian(model);
  return model;
}

// Parses "<prefix><index>" with prefix in {x, p, n, sx, sy, sz}.
std::pair<std::string, std::size_t> split_name(const std::string& name) {
  const auto pos = name.find_first_of("0123456789");
  if (pos == std::string::npos || pos == 0) throw ParameterError("bad circuit operator name '" + name + "'");
  std::size_t index = 0;
  const auto* first = name.data() + pos;
  const auto* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc{} || ptr != last) throw ParameterError("bad circuit operator name '" + name + "'");
  return {name.substr(0, pos), index};
}

}  // namespace

OperatorMatrix excitation_parity(const HilbertSpace& space) {
  const std::size_t n = space.total_dim();
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t excitations = 0;
    for (std::size_t f = 0; f < space.n_factors(); ++f) excitations += space.digit(i, f);
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = (excitations % 2 == 0) ? 1.0 : -1.0;
  }
  return OperatorMatrix(space, std::move(p));
}

ModelSystem build_rabi(double omega0, double omega_a, double g, std::size_t n_fock) {
  return single_mode_model("rabi", omega0, omega_a, g, n_fock, false);
}

ModelSystem build_jc(double omega0, double omega_a, double g, std::size_t n_fock) {
  return single_mode_model("jc", omega0, omega_a, g, n_fock, true);
}

OperatorMatrix circuit_operator(const HilbertSpace& space, const std::string& name) {
  const auto [prefix, index] = split_name(name);
  if (prefix == "x" || prefix == "p" || prefix == "n") {
    require(index < space.n_modes(), "operator '" + name + "' refers to a missing mode");
    const auto a = annihilation_op(space, index);
    if (prefix == "x") return a + adjoint(a);
    if (prefix == "p") return Complex{0.0, 1.0} * (adjoint(a) - a);
    return number_op(space, index);
  }
  if (prefix == "sx" || prefix == "sy" || prefix == "sz") {
    require(index < space.n_qubits(), "operator '" + name + "' refers to a missing qubit");
    const PauliAxis axis = prefix == "sx" ? PauliAxis::x : prefix == "sy" ? PauliAxis::y : PauliAxis::z;
    return pauli_op(space, index, axis);
  }
  throw ParameterError("unknown circuit operator '" + name + "'");
}

ModelSystem build_circuit(const CircuitSpec& spec) {
  require(!spec.modes.empty() || !spec.qubits.empty(), "circuit has no modes and no qubits");
  std::vector<std::size_t> dims;
  for (std::size_t m = 0; m < spec.modes.size(); ++m) {
    const auto& mode = spec.modes[m];
    const std::string tag = "mode " + std::to_string(m);
    require(std::isfinite(mode.frequency) && mode.frequency > 0.0, tag + ": frequency must be positive");
    require(std::isfinite(mode.flux_zpf), tag + ": flux_zpf must be finite");
    require(mode.truncation >= 2, tag + ": truncation must be at least 2");
    dims.push_back(mode.truncation);
  }
  for (std::size_t q = 0; q < spec.qubits.size(); ++q) {
    const auto& qubit = spec.qubits[q];
    const std::string tag = "qubit " + std::to_string(q);
    require(std::isfinite(qubit.frequency) && qubit.frequency > 0.0, tag + ": frequency must be positive");
    for (const auto& c : qubit.couplings) {
      require(c.mode < spec.modes.size(), tag + ": coupling refers to a missing mode");
      require(c.axis == PauliAxis::x || c.axis == PauliAxis::y || c.axis == PauliAxis::z,
              tag + ": coupling axis must be x, y or z");
      require(std::isfinite(c.strength), tag + ": coupling strength must be finite");
    }
  }
  if (spec.coupling_inductance) {
    require(std::isfinite(*spec.coupling_inductance) && *spec.coupling_inductance > 0.0,
            "coupling_inductance must be positive");
  }

  HilbertSpace space = make_space(dims, spec.qubits.size());
  OperatorMatrix h = OperatorMatrix::zero(space);
  OperatorMatrix flux = OperatorMatrix::zero(space);
  OperatorMatrix photons = OperatorMatrix::zero(space);
  std::map<std::string, OperatorMatrix> ops;

  for (std::size_t m = 0; m < spec.modes.size(); ++m) {
    const auto a = annihilation_op(space, m);
    const auto x = a + adjoint(a);
    const auto n = number_op(space, m);
    h = h + spec.modes[m].frequency * n;
    flux = flux + spec.modes[m].flux_zpf * x;
    photons = photons + n;
    ops.emplace("quadrature_" + std::to_string(m), x);
    ops.emplace("annihilation_" + std::to_string(m), a);
  }
  for (std::size_t q = 0; q < spec.qubits.size(); ++q) {
    const auto& qubit = spec.qubits[q];
    h = h + (0.5 * qubit.frequency) * pauli_op(space, q, PauliAxis::z);
    for (const auto& c : qubit.couplings) {
      const auto a = annihilation_op(space, c.mode);
      h = h + c.strength * (pauli_op(space, q, c.axis) * (a + adjoint(a)));
    }
    ops.emplace("sigma_x_" + std::to_string(q), pauli_op(space, q, PauliAxis::x));
  }
  for (const auto& c : spec.internal) {
    require(std::isfinite(c.strength), "internal coupling strength must be finite");
    const auto a = circuit_operator(space, c.a);
    const auto b = circuit_operator(space, c.b);
    h = h + (0.5 * c.strength) * (a * b + b * a);
  }
  if (spec.coupling_inductance && spec.include_flux_self_term && !spec.modes.empty()) {
    h = h + (0.5 / *spec.coupling_inductance) * (flux * flux);
  }

  ModelSystem model{"circuit", space, std::move(h), std::move(ops), std::nullopt, {}, 1.0};
  if (!spec.modes.empty()) {
    model.coupling_ops.emplace("flux", flux);
    model.coupling_ops.emplace("photon_number", photons);
    model.coupling_ops.emplace("annihilation", model.coupling_ops.at("annihilation_0"));
    double lowest = spec.modes.front().frequency;
    for (const auto& m : spec.modes) lowest = std::min(lowest, m.frequency);
    model.energy_scale = lowest;
  } else {
    double lowest = spec.qubits.front().frequency;
    for (const auto& q : spec.qubits) lowest = std::min(lowest, q.frequency);
    model.energy_scale = lowest;
  }

  // Excitation parity is only attached when it is a symmetry of this circuit.
  auto parity = excitation_parity(space);
  if (commutator(model.hamiltonian, parity).elements().cwiseAbs().maxCoeff() <= kHermitianTol) {
    model.parity_op = std::move(parity);
  }

  for (std::size_t m = 0; m < spec.modes.size(); ++m) {
    const std::string p = "mode" + std::to_string(m) + "_";
    model.params[p + "frequency"] = spec.modes[m].frequency;
    model.params[p + "flux_zpf"] = spec.modes[m].flux_zpf;
    model.params[p + "truncation"] = static_cast<double>(spec.modes[m].truncation);
  }
  for (std::size_t q = 0; q < spec.qubits.size(); ++q) {
    model.params["qubit" + std::to_string(q) + "_frequency"] = spec.qubits[q].frequency;
  }
  if (spec.coupling_inductance) model.params["coupling_inductance"] = *spec.coupling_inductance;
  check_hermitian(model);
  return model;
}

const OperatorMatrix& coupling_operator(const ModelSystem& model, const std::string& name) {
  const auto it = model.coupling_ops.find(name);
  if (it == model.coupling_ops.end()) {
    throw LookupError("model '" + model.kind + "' has no coupling operator '" + name + "'");
  }
  return it->second;
}

}  // namespace photodet
