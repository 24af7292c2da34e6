#include "photodet/detection.hpp"
#include "photodet/errors.hpp"
#include "oracle/frozen_values.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace photodet;
using testing_support::rel_diff;
using testing_support::solve;

constexpr double pi = std::numbers::pi;

TEST_CASE("wide-band rates") {
  const auto bare = build_rabi(1.0, 2.5, 0.0, 10);
  const auto bes = solve(bare);
  const auto bx = positive_frequency_op(bes, coupling_operator(bare, "quadrature"), DetectorResponse::flat(0.7));
  const std::size_t one = 1;  // |g,1> is the first excited level for w_a = 2.5
  CHECK(bare_photon_number(*bes, coupling_operator(bare, "photon_number"), one) == doctest::Approx(1.0));
  CHECK(wideband_rate(bx, one) == doctest::Approx(0.7).epsilon(1e-12));

  const auto m = build_rabi(1.0, 1.0, 0.5, 60);
  const auto es = solve(m);
  const auto x = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(1.0));
  CHECK(wideband_rate(x, 0) == 0.0);
  CHECK(rel_diff(wideband_rate(x, 1), frozen::rabi05_rate_from_e1) < 1e-6);
  CHECK_THROWS_AS(wideband_rate(x, es->dim()), std::out_of_range);
  CHECK(rel_diff(bare_photon_number(*es, coupling_operator(m, "photon_number"), 0),
                 frozen::rabi05_ground_photon_number) < 1e-6);
}

TEST_CASE("mixed states") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 60);
  const auto es = solve(m);
  const auto x = positive_frequency_op(es, coupling_operator(m, "quadrature"), DetectorResponse::flat(1.0));
  CHECK(mixed_rate(MixedState::pure(es, 0), x) == 0.0);
  const auto half = MixedState::blend(MixedState::pure(es, 0), MixedState::pure(es, 1), 0.5);
  CHECK(mixed_rate(half, x) == doctest::Approx(0.5 * wideband_rate(x, 1)).epsilon(1e-14));
  CHECK(rel_diff(mixed_rate(MixedState::thermal(es, 1.0), x), frozen::rabi05_thermal_rate_t1) < 1e-6);

  RealVector bad = RealVector::Zero(static_cast<Eigen::Index>(es->dim()));
  bad(0) = 0.5;
  CHECK_THROWS_AS(MixedState(es, bad), ValidationError);
  bad(0) = 1.5;
  bad(1) = -0.5;
  CHECK_THROWS_AS(MixedState(es, bad), ValidationError);
}

TEST_CASE("dipole rate") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 30);
  const auto es = solve(m);
  const auto e = frequency_weighted_positive_op(es, coupling_operator(m, "vector_potential"));
  const std::vector<DressedOperator> one{e};
  const std::vector<double> d1{1.0, 0.0, 0.0};
  CHECK(dipole_rate(one, std::span(d1).first(1), 3) == doctest::Approx(wideband_rate(e, 3)).epsilon(1e-14));
  const std::vector<DressedOperator> three{e, e, e};
  CHECK(dipole_rate(three, std::vector<double>{0.0, 0.0, 0.0}, 3) == 0.0);
  CHECK(dipole_rate(three, std::vector<double>{0.3, -1.0, 2.0}, 0) == 0.0);

  const auto other = solve(m);
  const std::vector<DressedOperator> mixed{e, frequency_weighted_positive_op(other, coupling_operator(m, "vector_potential"))};
  CHECK_THROWS_AS(dipole_rate(mixed, std::vector<double>{1.0, 1.0}, 1), ValidationError);
  const std::vector<DressedOperator> unweighted{wideband_positive_op(es, coupling_operator(m, "quadrature"))};
  CHECK_THROWS_AS(dipole_rate(unweighted, std::vector<double>{1.0}, 1), ValidationError);
}

TEST_CASE("narrow-band spectrum") {
  SUBCASE("bare cavity single line") {
    const auto m = build_rabi(1.0, 2.5, 0.0, 10);
    const auto es = solve(m);
    const auto o = wideband_positive_op(es, coupling_operator(m, "quadrature"));
    const double g = 0.3;
    const auto lines = emission_lines(o, 1);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].frequency == doctest::Approx(1.0));
    CHECK(narrowband_total_weight(o, 1, g) == doctest::Approx(2 * pi * g * g));
    const std::vector<double> grid{0.5, 1.0, 1.5};
    const auto s = narrowband_spectrum(o, 1, g, grid, 1e-2);
    CHECK(s[1] > s[0]);
    CHECK(s[1] > s[2]);
    CHECK(s[1] == doctest::Approx(2 * pi * g * g / (pi * 1e-2)));
  }
  SUBCASE("ground state is dark") {
    const auto m = build_rabi(1.0, 1.0, 0.8, 30);
    const auto es = solve(m);
    const auto o = wideband_positive_op(es, coupling_operator(m, "quadrature"));
    const std::vector<double> grid{0.1, 0.5, 1.0, 2.0, 5.0};
    for (double v : narrowband_spectrum(o, 0, 1.0, grid, 1e-3)) CHECK(v == 0.0);
  }
  SUBCASE("lines out of E2 agree with the oracle") {
    const auto m = build_rabi(1.0, 1.0, 0.3, 60);
    const auto es = solve(m);
    const auto o = wideband_positive_op(es, coupling_operator(m, "quadrature"));
    const auto lines = emission_lines(o, 2);
    double w0 = 0.0, w1 = 0.0;
    for (const auto& l : lines) {
      (l.final_state == 0 ? w0 : w1) += 2 * pi * l.weight;
      if (l.final_state == 0) CHECK(rel_diff(l.frequency, frozen::rabi03_line0_frequency) < 1e-6);
    }
    CHECK(rel_diff(w0, frozen::rabi03_line0_weight) < 1e-6);
    CHECK(std::abs(w1 - frozen::rabi03_line1_weight) < 1e-12);
    CHECK(rel_diff(es->energies(2) - es->energies(1), frozen::rabi03_line1_frequency) < 1e-6);
  }
  const auto m = build_rabi(1.0, 1.0, 0.3, 20);
  const auto es = solve(m);
  const auto o = wideband_positive_op(es, coupling_operator(m, "quadrature"));
  const std::vector<double> grid{1.0};
  CHECK_THROWS_AS(narrowband_spectrum(o, 2, 1.0, grid, 0.0), ParameterError);
  CHECK_THROWS_AS(narrowband_spectrum(o, 2, 1.0, std::vector<double>{-1.0}, 0.1), ParameterError);
}

TEST_CASE("short-time probability") {
  const auto m = build_rabi(1.0, 1.0, 0.5, 40);
  const auto es = solve(m);
  const auto x = eigenbasis_op(es, coupling_operator(m, "annihilation"));
  const AbsorberModeSet abs({{1.0, 0.01}});
  CHECK(shorttime_probability(x, abs, 0, 0.0) == 0.0);
  const double pref = shorttime_prefactor(x, abs, 0);
  const double n0 = bare_photon_number(*es, coupling_operator(m, "photon_number"), 0);
  CHECK(rel_diff(pref, 1e-4 * n0) < 1e-12);
  const double t = 1e-4;
  CHECK(rel_diff(shorttime_probability(x, abs, 0, t), pref * t * t) < 1e-6);

  const auto jc = build_jc(1.0, 1.0, 0.5, 40);
  const auto jes = solve(jc);
  const auto jx = eigenbasis_op(jes, coupling_operator(jc, "annihilation"));
  for (double tt : {1e-3, 1.0, 50.0}) CHECK(shorttime_probability(jx, abs, 0, tt) <= 1e-12);
  CHECK_THROWS_AS(AbsorberModeSet({{-1.0, 0.1}}), ParameterError);
}

TEST_CASE("long-time rate") {
  const auto bare = build_rabi(1.0, 2.5, 0.0, 10);
  const auto bes = solve(bare);
  const auto x = eigenbasis_op(bes, coupling_operator(bare, "annihilation"));
  const double g = 0.05;
  for (double eta : {1e-2, 1e-3}) {
    // Resonant absorber on |1>: 2 pi g^2 L_eta(0) = 2 g^2 / eta
    CHECK(rel_diff(longtime_rate(x, AbsorberModeSet({{1.0, g}}), 1, eta), 2 * g * g / eta) < 1e-12);
  }
  const double off3 = longtime_rate(x, AbsorberModeSet({{2.0, g}}), 1, 1e-3);
  const double off5 = longtime_rate(x, AbsorberModeSet({{2.0, g}}), 1, 1e-5);
  CHECK(off5 < off3 * 1.1e-2);
  CHECK_THROWS_AS(longtime_rate(x, AbsorberModeSet({{2.0, g}}), 1, 0.0), ParameterError);
}
