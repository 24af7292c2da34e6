#include "photodet/detection.hpp"

#include "photodet/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace photodet {

namespace {

using Index = Eigen::Index;

constexpr double kPopulationTol = 1e-10;
// Channels lighter than this fraction of the total are ignored when locating
// the fastest relevant frequency.
constexpr double kChannelFloor = 1e-16;

void check_index(std::size_t index, std::size_t dim) {
  if (index >= dim) {
    throw std::out_of_range("eigenstate index " + std::to_string(index) + " out of range (dim " +
                            std::to_string(dim) + ")");
  }
}

void check_eta(double eta) {
  if (!(std::isfinite(eta) && eta > 0.0)) throw ParameterError("broadening eta must be positive");
}

}  // namespace

MixedState::MixedState(EigenSystemPtr eigenbasis, RealVector populations)
    : eigenbasis_(std::move(eigenbasis)), populations_(std::move(populations)) {
  if (!eigenbasis_) throw ValidationError("mixed state needs an eigenbasis");
  if (static_cast<std::size_t>(populations_.size()) != eigenbasis_->dim()) {
    throw ValidationError("population vector length does not match the eigenbasis");
  }
  for (Index j = 0; j < populations_.size(); ++j) {
    if (!std::isfinite(populations_(j)) || populations_(j) < 0.0) {
      throw ValidationError("populations must be finite and non-negative");
    }
  }
  if (std::abs(populations_.sum() - 1.0) > kPopulationTol) {
    throw ValidationError("populations must sum to 1");
  }
}

MixedState MixedState::pure(EigenSystemPtr eigenbasis, std::size_t index) {
  check_index(index, eigenbasis->dim());
  RealVector p = RealVector::Zero(static_cast<Index>(eigenbasis->dim()));
  p(static_cast<Index>(index)) = 1.0;
  return MixedState(std::move(eigenbasis), std::move(p));
}

MixedState MixedState::thermal(EigenSystemPtr eigenbasis, double temperature) {
  if (!(temperature > 0.0)) throw ParameterError("temperature must be positive");
  const RealVector& e = eigenbasis->energies;
  RealVector p = (-(e.array() - e(0)) / temperature).exp().matrix();
  p /= p.sum();
  return MixedState(std::move(eigenbasis), std::move(p));
}

MixedState MixedState::blend(const MixedState& a, const MixedState& b, double alpha) {
  if (a.eigenbasis_ptr() != b.eigenbasis_ptr()) throw ValidationError("mixing states of different eigenbases");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParameterError("blend weight must lie in [0, 1]");
  return MixedState(a.eigenbasis_ptr(), alpha * a.populations() + (1.0 - alpha) * b.populations());
}

AbsorberModeSet::AbsorberModeSet(std::vector<AbsorberMode> modes) : modes_(std::move(modes)) {
  for (const auto& m : modes_) {
    if (!(std::isfinite(m.frequency) && m.frequency > 0.0)) throw ParameterError("absorber frequency must be > 0");
    if (!std::isfinite(m.coupling)) throw ParameterError("absorber coupling must be finite");
  }
}

double wideband_rate(const DressedOperator& xplus, std::size_t initial) {
  check_index(initial, xplus.dim());
  return xplus.matrix().col(static_cast<Index>(initial)).squaredNorm();
}

RealVector wideband_rates(const DressedOperator& xplus) {
  return kernels::column_weights(xplus.matrix());
}

double mixed_rate(const MixedState& state, const DressedOperator& xplus) {
  if (state.eigenbasis_ptr() != xplus.eigenbasis_ptr()) {
    throw ValidationError("mixed state and operator use different eigenbases");
  }
  const RealVector rates = wideband_rates(xplus);
  return state.populations().dot(rates);
}

double dipole_rate(std::span<const DressedOperator> components, std::span<const double> dipole,
                   std::size_t initial) {
  if (components.empty() || components.size() > 3) throw ValidationError("dipole_rate takes 1-3 components");
  if (dipole.size() != components.size()) throw ValidationError("dipole and component counts differ");
  const auto& basis = components.front().eigenbasis_ptr();
  for (const auto& c : components) {
    if (c.eigenbasis_ptr() != basis) throw ValidationError("dipole components use different eigenbases");
    if (c.part() != OperatorPart::positive_frequency || c.weighting() != "frequency_weighted") {
      throw ValidationError("dipole components must come from frequency_weighted_positive_op");
    }
  }
  check_index(initial, components.front().dim());
  // With real d the quadratic form is || sum_b d_b E_b+ |E_i> ||^2.
  Vector field = Vector::Zero(static_cast<Index>(components.front().dim()));
  for (std::size_t b = 0; b < components.size(); ++b) {
    field += dipole[b] * components[b].matrix().col(static_cast<Index>(initial));
  }
  return field.squaredNorm();
}

std::vector<EmissionLine> emission_lines(const DressedOperator& oplus, std::size_t initial) {
  check_index(initial, oplus.dim());
  const EigenSystem& es = oplus.eigenbasis();
  std::vector<EmissionLine> lines;
  const auto col = oplus.matrix().col(static_cast<Index>(initial));
  for (Index k = 0; k < col.size(); ++k) {
    const double w = std::norm(col(k));
    if (w > 0.0) lines.push_back({static_cast<std::size_t>(k), es.transition_frequency(initial, static_cast<std::size_t>(k)), w});
  }
  return lines;
}

std::vector<double> narrowband_spectrum(const DressedOperator& oplus, std::size_t initial, double coupling,
                                        std::span<const double> omega_grid, double eta, kernels::Exec exec) {
  check_eta(eta);
  for (double w : omega_grid) {
    if (!(std::isfinite(w) && w > 0.0)) throw ParameterError("detector frequencies must be finite and positive");
  }
  const auto lines = emission_lines(oplus, initial);
  std::vector<double> centers;
  std::vector<double> weights;
  const double scale = 2.0 * std::numbers::pi * coupling * coupling;
  for (const auto& l : lines) {
    centers.push_back(l.frequency);
    weights.push_back(scale * l.weight);
  }
  return kernels::lorentzian_sum(centers, weights, omega_grid, eta, exec);
}

double narrowband_band_weight(const DressedOperator& oplus, std::size_t initial, double coupling, double lo,
                              double hi, double eta) {
  check_eta(eta);
  if (!(hi >= lo)) throw ParameterError("band upper edge below lower edge");
  const double scale = 2.0 * coupling * coupling;  // 2 pi g^2 / pi from the arctan antiderivative
  double total = 0.0;
  for (const auto& l : emission_lines(oplus, initial)) {
    total += l.weight * (std::atan((hi - l.frequency) / eta) - std::atan((lo - l.frequency) / eta));
  }
  return scale * total;
}

double narrowband_total_weight(const DressedOperator& oplus, std::size_t initial, double coupling) {
  return 2.0 * std::numbers::pi * coupling * coupling * wideband_rate(oplus, initial);
}

std::vector<AbsorptionChannel> absorption_channels(const DressedOperator& x, const AbsorberModeSet& absorbers,
                                                   std::size_t initial) {
  check_index(initial, x.dim());
  const EigenSystem& es = x.eigenbasis();
  const auto col = x.matrix().col(static_cast<Index>(initial));
  std::vector<AbsorptionChannel> channels;
  for (std::size_t n = 0; n < absorbers.modes().size(); ++n) {
    const auto& mode = absorbers.modes()[n];
    const double g2 = mode.coupling * mode.coupling;
    for (Index k = 0; k < col.size(); ++k) {
      const double w = g2 * std::norm(col(k));
      if (w > 0.0) {
        channels.push_back({n, static_cast<std::size_t>(k),
                            mode.frequency - es.transition_frequency(initial, static_cast<std::size_t>(k)), w});
      }
    }
  }
  return channels;
}

namespace {

void split_channels(const std::vector<AbsorptionChannel>& channels, std::vector<double>& freqs,
                    std::vector<double>& weights) {
  freqs.reserve(channels.size());
  weights.reserve(channels.size());
  for (const auto& c : channels) {
    freqs.push_back(c.detuning);
    weights.push_back(c.weight);
  }
}

}  // namespace

std::vector<double> shorttime_series(const DressedOperator& x, const AbsorberModeSet& absorbers,
                                     std::size_t initial, std::span<const double> times, kernels::Exec exec) {
  for (double t : times) {
    if (!(std::isfinite(t) && t >= 0.0)) throw ParameterError("times must be finite and non-negative");
  }
  std::vector<double> freqs;
  std::vector<double> weights;
  split_channels(absorption_channels(x, absorbers, initial), freqs, weights);
  return kernels::sinc_squared_sum(freqs, weights, times, exec);
}

double shorttime_probability(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial,
                             double t) {
  const std::array<double, 1> times{t};
  return shorttime_series(x, absorbers, initial, times, kernels::Exec::serial).front();
}

double shorttime_prefactor(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial) {
  double total = 0.0;
  for (const auto& c : absorption_channels(x, absorbers, initial)) total += c.weight;
  return total;
}

double max_channel_frequency(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial) {
  const auto channels = absorption_channels(x, absorbers, initial);
  double total = 0.0;
  for (const auto& c : channels) total += c.weight;
  double fastest = 0.0;
  for (const auto& c : channels) {
    if (c.weight >= kChannelFloor * total) fastest = std::max(fastest, std::abs(c.detuning));
  }
  return fastest;
}

double longtime_rate(const DressedOperator& x, const AbsorberModeSet& absorbers, std::size_t initial,
                     double eta) {
  check_eta(eta);
  double total = 0.0;
  for (const auto& c : absorption_channels(x, absorbers, initial)) {
    total += c.weight * kernels::lorentzian(c.detuning, eta);
  }
  return 2.0 * std::numbers::pi * total;
}

double bare_photon_number(const EigenSystem& es, const OperatorMatrix& number_op, std::size_t state) {
  check_index(state, es.dim());
  if (!(number_op.space() == es.source_space)) throw IncompatibleSpaceError("observable space mismatch");
  const auto v = es.states.col(static_cast<Index>(state));
  return v.dot(number_op.elements() * v).real();
}

}  // namespace photodet
