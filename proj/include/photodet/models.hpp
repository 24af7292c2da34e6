#pragma once

// Light-matter Hamiltonians: quantum Rabi, Jaynes-Cummings, and a multimode
// "black box" circuit with flux coupling to an external absorber.
// hbar = 1; frequencies and energies share one (arbitrary) unit.

#include "photodet/hilbert.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace photodet {

struct ModelSystem {
  std::string kind;  // "rabi", "jc" or "circuit"
  HilbertSpace space;
  OperatorMatrix hamiltonian;
  std::map<std::string, OperatorMatrix> coupling_ops;
  std::optional<OperatorMatrix> parity_op;
  std::map<std::string, double> params;
  // Characteristic frequency; the degeneracy tolerance is 1e-9 of it.
  double energy_scale = 1.0;

  std::size_t dim() const { return space.total_dim(); }
};

/// Element-wise Hermiticity tolerance enforced on every built Hamiltonian.
inline constexpr double kHermitianTol = 1e-12;

ModelSystem build_rabi(double omega0, double omega_a, double g, std::size_t n_fock);
ModelSystem build_jc(double omega0, double omega_a, double g, std::size_t n_fock);

struct CircuitMode {
  double frequency = 1.0;
  double flux_zpf = 1.0;
  std::size_t truncation = 40;
};

/// sigma_axis (x, y or z) of the owning qubit times (a_m + a_m^dag).
struct QubitCoupling {
  std::size_t mode = 0;
  PauliAxis axis = PauliAxis::x;
  double strength = 0.0;
};

struct CircuitQubit {
  double frequency = 1.0;
  std::vector<QubitCoupling> couplings;
};

/// strength * (A B + B A) / 2 with A, B named circuit operators:
/// "x<m>" = a_m + a_m^dag, "p<m>" = i(a_m^dag - a_m), "n<m>" = a_m^dag a_m,
/// "sx<q>", "sy<q>", "sz<q>" = Pauli operators of qubit q.
struct InternalCoupling {
  std::string a;
  std::string b;
  double strength = 0.0;
};

struct CircuitSpec {
  std::vector<CircuitMode> modes;
  std::vector<CircuitQubit> qubits;
  std::vector<InternalCoupling> internal;
  // When set and include_flux_self_term is true, Phi^2 / (2 L_c) is added to
  // the system Hamiltonian (the system-side quadratic term of the inductive
  // coupling).
  std::optional<double> coupling_inductance;
  bool include_flux_self_term = true;
};

ModelSystem build_circuit(const CircuitSpec& spec);

/// Resolves a circuit operator name ("x0", "sz1", ...) on the given space.
OperatorMatrix circuit_operator(const HilbertSpace& space, const std::string& name);

const OperatorMatrix& coupling_operator(const ModelSystem& model, const std::string& name);

/// exp[i pi (sum_m a_m^dag a_m + sum_q sigma_+ sigma_-)] as a diagonal +-1 matrix.
OperatorMatrix excitation_parity(const HilbertSpace& space);

}  // namespace photodet
