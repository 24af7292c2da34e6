#pragma once

#include "photodet/kernels.hpp"

namespace photodet::kernels {

// Column block width of the eigenbasis transform. The serial reference uses
// the same blocking so both paths perform identical floating-point work.
inline constexpr Eigen::Index kColumnBlock = 32;

}  // namespace photodet::kernels

namespace photodet::kernels::omp {

Matrix to_eigenbasis(const Matrix& states, const Matrix& op);
Matrix lowering_part(const Matrix& o_eig, const RealVector& energies, double tol,
                     const TransitionWeight& weight);
RealVector column_weights(const Matrix& x);
std::vector<double> lorentzian_sum(std::span<const double> centers, std::span<const double> weights,
                                   std::span<const double> grid, double eta);
std::vector<double> sinc_squared_sum(std::span<const double> freqs, std::span<const double> weights,
                                     std::span<const double> times);
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace photodet::kernels::omp
