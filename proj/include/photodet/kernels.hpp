#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP implementation behind the same signature. Apart from
// to_eigenbasis (blocked GEMM, equal to rounding), both paths perform the
// same arithmetic per output element and agree bit for bit, independent of
// the thread count.

#include "photodet/hilbert.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace photodet::kernels {

enum class Exec { serial, parallel };

/// V^dag O V for eigenvector matrix V.
Matrix to_eigenbasis(const Matrix& states, const Matrix& op, Exec exec = Exec::parallel);

/// Amplitude factor for a transition of the given (positive) frequency.
/// May throw; the first exception is rethrown after the loop.
using TransitionWeight = std::function<Complex(double frequency)>;

/// x(k, j) = weight(E_j - E_k) * o(k, j) where E_j - E_k > tol, else exactly 0.
Matrix lowering_part(const Matrix& o_eig, const RealVector& energies, double tol,
                     const TransitionWeight& weight, Exec exec = Exec::parallel);

/// sum_k |x(k, j)|^2 for every column j.
RealVector column_weights(const Matrix& x, Exec exec = Exec::parallel);

/// out[i] = sum_t weights[t] * L_eta(grid[i] - centers[t]), unit-area Lorentzian.
std::vector<double> lorentzian_sum(std::span<const double> centers, std::span<const double> weights,
                                   std::span<const double> grid, double eta,
                                   Exec exec = Exec::parallel);

/// out[i] = sum_t weights[t] * F(times[i], freqs[t])^2, F(t, w) = sin(w t / 2) / (w / 2).
std::vector<double> sinc_squared_sum(std::span<const double> freqs, std::span<const double> weights,
                                     std::span<const double> times, Exec exec = Exec::parallel);

/// Runs body(i) for i in [0, n); ordering of side effects is the caller's concern.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Exec exec = Exec::parallel);

// Scalar helpers shared by both paths (inline so both loops vectorize alike).
inline double lorentzian(double x, double eta) { return (eta / std::numbers::pi) / (x * x + eta * eta); }

/// F(t, w) = sin(w t / 2) / (w / 2); a short series keeps F -> t smooth as w t -> 0.
inline double sinc_kernel(double t, double omega) {
  const double half = 0.5 * omega * t;
  if (std::abs(half) < 1e-4) return t * (1.0 - half * half / 6.0);
  return std::sin(half) / (0.5 * omega);
}

}  // namespace photodet::kernels
