#pragma once

// Generated by freeze_oracle; do not edit by hand.

namespace frozen {

// Rabi(1, 1, 0.5), n_fock = 120
inline constexpr double rabi05_ground_photon_number = 0.084638524509243848;
inline constexpr int rabi05_first_excited_parity = -1;
inline constexpr double rabi05_x01_squared = 1.1855085565809722;
inline constexpr double rabi05_rate_from_e1 = 1.1855085565809722;
inline constexpr double rabi05_thermal_rate_t1 = 0.98155539938188374;

// Rabi(1, 1, 1.0), n_fock = 200
inline constexpr double rabi10_energies[6] = {-1.147945729315976, -1.0101783011790446, -0.23172250022688023, 0.13343545425784969, 0.92704386591914778, 1.1048094636270358};
// Doubling from base 10, 6 levels, tol 1e-8
inline constexpr int rabi10_recommended_truncation = 20;

// Rabi(1, 1, 0.3), n_fock = 120, narrow-band lines out of E2 with g = 1
inline constexpr double rabi03_line0_frequency = 1.2946651367455697;
inline constexpr double rabi03_line0_weight = 2.0763697448001919;
inline constexpr double rabi03_line1_frequency = 0.59182222879063473;
inline constexpr double rabi03_line1_weight = 0;

}  // namespace frozen
