#include "photodet/detection.hpp"
#include "photodet/errors.hpp"
#include "photodet/models.hpp"
#include "photodet/spectrum.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace photodet;
using testing_support::solve;

TEST_CASE("Rabi Hamiltonian") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 12);
  CHECK(m.dim() == 24);
  CHECK(m.hamiltonian.is_hermitian(kHermitianTol));
  for (const auto& [name, op] : m.coupling_ops) CHECK(op.space() == m.space);

  const auto a = annihilation_op(m.space, 0);
  const auto expect = 1.0 * number_op(m.space, 0) + 0.5 * pauli_op(m.space, 0, PauliAxis::z) +
                      0.5 * (pauli_op(m.space, 0, PauliAxis::x) * (a + adjoint(a)));
  CHECK((m.hamiltonian - expect).elements().norm() < 1e-14);
  CHECK((coupling_operator(m, "quadrature") - (a + adjoint(a))).elements().norm() == 0.0);
  CHECK((coupling_operator(m, "photon_number") - number_op(m.space, 0)).elements().norm() == 0.0);
  CHECK_THROWS_AS(coupling_operator(m, "nope"), LookupError);
}

TEST_CASE("Rabi limits") {
  auto es = diagonalize(build_rabi(1.0, 1.0, 0.0, 10));
  CHECK(es.energies(0) == doctest::Approx(-0.5).epsilon(1e-14));

  es = diagonalize(build_rabi(1.0, 0.0, 0.5, 60));
  for (int n = 0; n < 5; ++n) {
    CHECK(std::abs(es.energies(2 * n) - (n - 0.25)) < 1e-10);
    CHECK(std::abs(es.energies(2 * n + 1) - (n - 0.25)) < 1e-10);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_rabi(0.0, 1.0, 0.1, 10), ParameterError);
  CHECK_THROWS_AS(build_rabi(1.0, -1.0, 0.1, 10), ParameterError);
  CHECK_THROWS_AS(build_rabi(1.0, 1.0, -0.1, 10), ParameterError);
  CHECK_THROWS_AS(build_rabi(1.0, 1.0, 0.1, 1), ParameterError);
  CHECK_THROWS_AS(build_jc(-1.0, 1.0, 0.1, 10), ParameterError);
}

TEST_CASE("Jaynes-Cummings model") {
  const auto m = build_jc(1.0, 1.0, 0.1, 20);
  const auto es = solve(m);
  CHECK(std::abs(es->energies(0) + 0.5) < 1e-14);
  CHECK(std::abs(es->energies(1) - 0.4) < 1e-12);
  CHECK(std::abs(es->energies(2) - 0.6) < 1e-12);
  CHECK(std::abs(bare_photon_number(*es, coupling_operator(m, "photon_number"), 0)) < 1e-14);
  CHECK(es->parity.at(0) == 1);
  // |g,0> stays the ground state while the one-excitation polariton 0.5 - g
  // lies above it, i.e. for g < omega0 at resonance.
  for (double g : {0.3, 0.7, 0.95}) {
    const auto e = diagonalize(build_jc(1.0, 1.0, g, 20));
    CHECK(std::abs(e.energies(0) + 0.5) < 1e-12);
  }
  CHECK(diagonalize(build_jc(1.0, 1.0, 2.0, 20)).energies(0) < -1.0);
}

TEST_CASE("circuit reduces to Rabi") {
  CircuitSpec spec;
  spec.modes = {CircuitMode{1.0, 1.0, 16}};
  spec.qubits = {CircuitQubit{1.0, {QubitCoupling{0, PauliAxis::x, 0.4}}}};
  const auto c = build_circuit(spec);
  const auto r = build_rabi(1.0, 1.0, 0.4, 16);
  CHECK((c.hamiltonian - r.hamiltonian).elements().norm() < 1e-14);
  REQUIRE(c.parity_op);
  CHECK((*c.parity_op - *r.parity_op).elements().norm() == 0.0);
}

TEST_CASE("circuit flux operator") {
  CircuitSpec spec;
  spec.modes = {CircuitMode{1.0, 1.0, 5}, CircuitMode{1.7, 2.0, 5}};
  const auto c = build_circuit(spec);
  const auto& flux = coupling_operator(c, "flux");
  for (std::size_t i = 0; i < c.dim(); ++i) {
    for (std::size_t j = 0; j < c.dim(); ++j) {
      if (flux(i, j) == Complex(0.0)) continue;
      const long d0 = static_cast<long>(c.space.digit(i, 0)) - static_cast<long>(c.space.digit(j, 0));
      const long d1 = static_cast<long>(c.space.digit(i, 1)) - static_cast<long>(c.space.digit(j, 1));
      CHECK(((std::abs(d0) == 1 && d1 == 0) || (d0 == 0 && std::abs(d1) == 1)));
    }
  }
  const auto vac = StateVector::basis(c.space, 0);
  CHECK(std::abs(inner(vac, apply(flux * flux, vac)) - 5.0) < 1e-14);
  const auto a0 = annihilation_op(c.space, 0);
  const auto a1 = annihilation_op(c.space, 1);
  CHECK((flux - (a0 + adjoint(a0)) - 2.0 * (a1 + adjoint(a1))).elements().norm() < 1e-14);
}

TEST_CASE("circuit validation") {
  CircuitSpec spec;
  spec.modes = {CircuitMode{1.0, 1.0, 5}};
  spec.qubits = {CircuitQubit{1.0, {QubitCoupling{3, PauliAxis::x, 0.1}}}};
  CHECK_THROWS_AS(build_circuit(spec), ParameterError);
  spec.qubits.clear();
  spec.modes[0].frequency = -1.0;
  CHECK_THROWS_AS(build_circuit(spec), ParameterError);
  spec.modes[0].frequency = 1.0;
  spec.modes[0].truncation = 1;
  CHECK_THROWS(build_circuit(spec));
}

TEST_CASE("inductive self term and internal couplings") {
  CircuitSpec spec;
  spec.modes = {CircuitMode{1.0, 0.5, 6}};
  spec.coupling_inductance = 2.0;
  const auto with = build_circuit(spec);
  spec.include_flux_self_term = false;
  const auto without = build_circuit(spec);
  const auto& flux = coupling_operator(with, "flux");
  CHECK((with.hamiltonian - without.hamiltonian - 0.25 * (flux * flux)).elements().norm() < 1e-14);

  spec.internal = {InternalCoupling{"x0", "n0", 0.1}};
  const auto coupled = build_circuit(spec);
  CHECK(coupled.hamiltonian.is_hermitian(kHermitianTol));
}

TEST_CASE("parity operator commutes with Rabi but not with a sigma_z coupled circuit") {
  const auto r = build_rabi(1.0, 0.7, 0.9, 10);
  REQUIRE(r.parity_op);
  CHECK(commutator(r.hamiltonian, *r.parity_op).elements().norm() < 1e-13);

  CircuitSpec spec;
  spec.modes = {CircuitMode{1.0, 1.0, 6}};
  spec.qubits = {CircuitQubit{1.0, {QubitCoupling{0, PauliAxis::z, 0.2}}}};
  CHECK_FALSE(build_circuit(spec).parity_op.has_value());
}
