#include "photodet/dressed.hpp"
#include "photodet/errors.hpp"
#include "oracle/frozen_values.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace photodet;
using testing_support::rel_diff;
using testing_support::solve;

TEST_CASE("detector responses") {
  CHECK(DetectorResponse::flat(2.0)(5.0) == 2.0);
  CHECK(DetectorResponse::ohmic(1.0, 2.0)(1.0) == 0.5);
  const auto tab = DetectorResponse::tabulated({0.5, 1.0, 2.0}, {0.0, 1.0, 3.0});
  CHECK(tab(1.5) == doctest::Approx(2.0));
  CHECK(tab.covers(2.0));
  CHECK_FALSE(tab.covers(2.5));
  CHECK_THROWS_AS(tab(2.5), ParameterError);
  CHECK_THROWS_AS(DetectorResponse::tabulated({1.0, 0.5}, {1.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(DetectorResponse::tabulated({0.5, 1.0}, {1.0, -1.0}), ParameterError);
  CHECK_THROWS_AS(DetectorResponse::flat(-1.0), ParameterError);
}

TEST_CASE("bare mode limit: x+ is the annihilation operator") {
  const auto m = build_rabi(1.0, 1.3, 0.0, 12);
  const auto es = solve(m);
  const auto xplus = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(1.0));
  const auto bare = xplus.bare_basis_view();
  CHECK((bare - annihilation_op(m.space, 0)).elements().cwiseAbs().maxCoeff() < 1e-10);
  // x- = sqrt(chi) a^dag
  const auto scaled = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(4.0));
  CHECK((adjoint(scaled).bare_basis_view() - 2.0 * creation_op(m.space, 0)).elements().cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("lowering structure and ground annihilation") {
  for (double g : {0.1, 0.5, 1.2}) {
    const auto m = build_rabi(1.0, 1.0, g, 30);
    const auto es = solve(m);
    const auto xplus = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::ohmic(1.0, 1.0));
    const auto& x = xplus.matrix();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      for (Eigen::Index k = 0; k < x.rows(); ++k) {
        if (!(es->energies(j) - es->energies(k) > es->degeneracy_tol)) CHECK(x(k, j) == Complex(0.0));
      }
    }
    const Vector v = xplus.apply_to_eigenstate(0);
    CHECK(v.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("matrix element against the oracle") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 60);
  const auto es = solve(m);
  const auto xplus = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(1.0));
  CHECK(rel_diff(std::norm(xplus.matrix()(0, 1)), frozen::rabi05_x01_squared) < 1e-6);
}

TEST_CASE("wide-band operator decomposition") {
  const auto m = build_rabi(1.0, 1.0, 0.7, 24);
  const auto es = solve(m);
  const auto& o = coupling_operator(m, "quadrature");
  const auto plus = wideband_positive_op(es, o);
  const auto flat = positive_frequency_op(es, o, DetectorResponse::flat(1.0));
  CHECK(plus.matrix() == flat.matrix());
  // O+ + O- recovers O outside the energy-diagonal block.
  const Matrix full = es->states.adjoint() * o.elements() * es->states;
  const Matrix sum = plus.matrix() + adjoint(plus).matrix();
  for (Eigen::Index j = 0; j < full.cols(); ++j) {
    for (Eigen::Index k = 0; k < full.rows(); ++k) {
      const bool degenerate = std::abs(es->energies(j) - es->energies(k)) <= es->degeneracy_tol;
      CHECK(std::abs(sum(k, j) - (degenerate ? Complex(0.0) : full(k, j))) < 1e-12);
    }
  }
  CHECK(adjoint(adjoint(plus)).matrix() == plus.matrix());
  CHECK(adjoint(plus).part() == OperatorPart::negative_frequency);

  const auto jc = build_jc(1.0, 1.0, 0.7, 24);
  const auto jes = solve(jc);
  CHECK(wideband_positive_op(jes, coupling_operator(jc, "quadrature")).apply_to_eigenstate(0).norm() == 0.0);
}

TEST_CASE("frequency-weighted operator") {
  SUBCASE("bare cavity") {
    const auto m = build_rabi(1.0, 3.0, 0.0, 10);
    const auto es = solve(m);
    const auto& A = coupling_operator(m, "vector_potential");
    const auto e = frequency_weighted_positive_op(es, A);
    const auto bare = e.bare_basis_view();
    const std::size_t one = basis_index(m.space, {1, 0});
    CHECK(std::abs(std::abs(bare(0, one)) - std::abs(A(0, one))) < 1e-12);
    // +i w convention: <0|E+|1> = +i * w * <0|A|1>
    CHECK(std::abs(bare(0, one) - Complex(0, 1) * A(0, one)) < 1e-12);
    CHECK(e.apply_to_eigenstate(0).norm() == 0.0);
  }
  SUBCASE("ratio to the unweighted element is the transition frequency") {
    const auto m = build_rabi(1.0, 1.0, 0.5, 40);
    const auto es = solve(m);
    const auto& o = coupling_operator(m, "quadrature");
    const auto e = frequency_weighted_positive_op(es, o);
    const auto p = wideband_positive_op(es, o);
    const double ratio = std::abs(e.matrix()(0, 1)) / std::abs(p.matrix()(0, 1));
    CHECK(rel_diff(ratio, es->energies(1) - es->energies(0)) < 1e-12);
  }
}

TEST_CASE("errors") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 10);
  const auto es = solve(m);
  CHECK_THROWS_AS(positive_frequency_op(es, coupling_operator(m, "annihilation"), DetectorResponse::flat(1.0)),
                  ValidationError);
  CHECK_THROWS_AS(wideband_positive_op(es, coupling_operator(build_rabi(1.0, 1.0, 0.5, 11), "quadrature")),
                  IncompatibleSpaceError);
  // A tabulated response that does not reach the largest transition frequency.
  CHECK_THROWS_AS(
      positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::tabulated({0.1, 1.0}, {1.0, 1.0})),
      ParameterError);
  // Unfiltered representation accepts non-Hermitian operators.
  const auto a = eigenbasis_op(es, coupling_operator(m, "annihilation"));
  CHECK(a.part() == OperatorPart::full);
}
