#pragma once

// Photodetection observables built from dressed operators.
//
// Conventions:
//  * Delta functions are unit-area Lorentzians L_eta(x) = (eta/pi) / (x^2 + eta^2).
//  * The wide-band rate from |E_i> is <E_i|x- x+|E_i> = sum_k |x_ki|^2.
//  * The narrow-band rate at detector frequency w_d is
//      2 pi g^2 sum_k |O+_ki|^2 L_eta(w_d - (E_i - E_k)),
//    i.e. the golden-rule sum with the delta broadened; its integral over w_d
//    is 2 pi g^2 sum_k |O+_ki|^2.

#include "photodet/dressed.hpp"
#include "photodet/kernels.hpp"

#include <array>
#include <span>
#include <vector>

namespace photodet {

/// rho = sum_j P_j |E_j><E_j|
class MixedState {
 public:
  MixedState(EigenSystemPtr eigenbasis, RealVector populations);

  static MixedState pure(EigenSystemPtr eigenbasis, std::size_t index);
  /// P_j proportional to exp(-(E_j - E_0) / temperature).
  static MixedState thermal(EigenSystemPtr eigenbasis, double temperature);
  /// alpha * a + (1 - alpha) * b
  static MixedState blend(const MixedState& a, const MixedState& b, double alpha);

  const EigenSystem& eigenbasis() const { return *eigenbasis_; }
  const EigenSystemPtr& eigenbasis_ptr() const { return eigenbasis_; }
  const RealVector& populations() const { return populations_; }

 private:
  EigenSystemPtr eigenbasis_;
  RealVector populations_;
};

struct AbsorberMode {
  double frequency = 1.0;
  double coupling = 0.0;
};

class AbsorberModeSet {
 public:
  explicit AbsorberModeSet(std::vector<AbsorberMode> modes);
  const std::vector<AbsorberMode>& modes() const { return modes_; }

 private:
  std::vector<AbsorberMode> modes_;
};

double wideband_rate(const DressedOperator& xplus, std::size_t initial);
/// Rates from every eigenstate at once.
RealVector wideband_rates(const DressedOperator& xplus);
double mixed_rate(const MixedState& state, const DressedOperator& xplus);

/// sum_ab d_a d_b <E_i|E_a- E_b+|E_i> for 1-3 frequency-weighted components.
double dipole_rate(std::span<const DressedOperator> components, std::span<const double> dipole,
                   std::size_t initial);

struct EmissionLine {
  std::size_t final_state;
  double frequency;  // E_i - E_k > 0
  double weight;     // |O+_ki|^2
};

/// Non-zero lowering transitions out of |E_initial>, in final-state order.
std::vector<EmissionLine> emission_lines(const DressedOperator& oplus, std::size_t initial);

std::vector<double> narrowband_spectrum(const DressedOperator& oplus, std::size_t initial, double coupling,
                                        std::span<const double> omega_grid, double eta,
                                        kernels::Exec exec = kernels::Exec::parallel);
/// Exact integral of narrowband_spectrum over w_d in [lo, hi] (infinite bounds allowed).
double narrowband_band_weight(const DressedOperator& oplus, std::size_t initial, double coupling, double lo,
                              double hi, double eta);
/// 2 pi g^2 sum_k |O+_ki|^2
double narrowband_total_weight(const DressedOperator& oplus, std::size_t initial, double coupling);

/// One first-order channel: absorber mode n excited while the system goes
/// |E_i> -> |E_k>; W = g_n <E_k|x|E_i>, detuning w = w_n + E_k - E_i.
struct AbsorptionChannel {
  std::size_t absorber;
  std::size_t final_state;
  double detuning;
  double weight;  // |W|^2
};

std::vector<AbsorptionChannel> absorption_channels(const DressedOperator& x, const AbsorberModeSet& absorbers,
                                                   std::size_t initial);
/// P(t) = sum |W|^2 F(t, w)^2, F(t, w) = sin(w t / 2) / (w / 2).
double shorttime_probability(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial,
                             double t);
std::vector<double> shorttime_series(const DressedOperator& x, const AbsorberModeSet& absorbers,
                                     std::size_t initial, std::span<const double> times,
                                     kernels::Exec exec = kernels::Exec::parallel);
/// lim P(t) / t^2 as t -> 0, i.e. sum |W|^2.
double shorttime_prefactor(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial);
/// Largest |detuning| among channels carrying a non-negligible weight.
double max_channel_frequency(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial);
/// 2 pi sum |W|^2 L_eta(w).
double longtime_rate(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial,
                     double eta);

/// <E_state|N|E_state> for a Hermitian observable N (typically a^dag a).
double bare_photon_number(const EigenSystem& es, const OperatorMatrix& number_op, std::size_t state);

}  // namespace photodet
