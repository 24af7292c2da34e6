// Serial reference implementations and dispatch.

#include "photodet/kernels.hpp"

#include "kernels_omp.hpp"
#include "photodet/errors.hpp"

#include <cmath>
#include <numbers>

namespace photodet::kernels {

using Index = Eigen::Index;

namespace {

Matrix to_eigenbasis_serial(const Matrix& states, const Matrix& op) {
  const Index n = states.cols();
  Matrix out(n, n);
  for (Index first = 0; first < n; first += kColumnBlock) {
    const Index width = std::min(kColumnBlock, n - first);
    out.middleCols(first, width).noalias() = states.adjoint() * (op * states.middleCols(first, width));
  }
  return out;
}

Matrix lowering_part_serial(const Matrix& o_eig, const RealVector& energies, double tol,
                            const TransitionWeight& weight) {
  const Index n = o_eig.rows();
  Matrix x = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < j; ++k) {
      const double w = energies(j) - energies(k);
      if (w > tol && o_eig(k, j) != Complex{}) x(k, j) = weight(w) * o_eig(k, j);
    }
  }
  return x;
}

RealVector column_weights_serial(const Matrix& x) {
  RealVector out(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    double s = 0.0;
    for (Index k = 0; k < x.rows(); ++k) s += std::norm(x(k, j));
    out(j) = s;
  }
  return out;
}

std::vector<double> lorentzian_sum_serial(std::span<const double> centers, std::span<const double> weights,
                                          std::span<const double> grid, double eta) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < centers.size(); ++t) s += weights[t] * lorentzian(grid[i] - centers[t], eta);
    out[i] = s;
  }
  return out;
}

std::vector<double> sinc_squared_sum_serial(std::span<const double> freqs, std::span<const double> weights,
                                            std::span<const double> times) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < freqs.size(); ++t) {
      const double f = sinc_kernel(times[i], freqs[t]);
      s += weights[t] * f * f;
    }
    out[i] = s;
  }
  return out;
}

void check_pair(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ParameterError("kernel input spans differ in length");
}

}  // namespace

Matrix to_eigenbasis(const Matrix& states, const Matrix& op, Exec exec) {
  if (states.rows() != op.rows() || op.rows() != op.cols()) {
    throw IncompatibleSpaceError("to_eigenbasis: shape mismatch");
  }
  return exec == Exec::serial ? to_eigenbasis_serial(states, op) : omp::to_eigenbasis(states, op);
}

Matrix lowering_part(const Matrix& o_eig, const RealVector& energies, double tol,
                     const TransitionWeight& weight, Exec exec) {
  if (o_eig.rows() != energies.size() || o_eig.cols() != energies.size()) {
    throw IncompatibleSpaceError("lowering_part: shape mismatch");
  }
  return exec == Exec::serial ? lowering_part_serial(o_eig, energies, tol, weight)
                              : omp::lowering_part(o_eig, energies, tol, weight);
}

RealVector column_weights(const Matrix& x, Exec exec) {
  return exec == Exec::serial ? column_weights_serial(x) : omp::column_weights(x);
}

std::vector<double> lorentzian_sum(std::span<const double> centers, std::span<const double> weights,
                                   std::span<const double> grid, double eta, Exec exec) {
  check_pair(centers, weights);
  if (!(eta > 0.0)) throw ParameterError("Lorentzian width must be positive");
  return exec == Exec::serial ? lorentzian_sum_serial(centers, weights, grid, eta)
                              : omp::lorentzian_sum(centers, weights, grid, eta);
}

std::vector<double> sinc_squared_sum(std::span<const double> freqs, std::span<const double> weights,
                                     std::span<const double> times, Exec exec) {
  check_pair(freqs, weights);
  return exec == Exec::serial ? sinc_squared_sum_serial(freqs, weights, times)
                              : omp::sinc_squared_sum(freqs, weights, times);
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Exec exec) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  omp::for_each_index(n, body);
}

}  // namespace photodet::kernels
