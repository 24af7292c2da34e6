#pragma once

// Positive-/negative-frequency operators in the eigenbasis of the
// interacting light-matter Hamiltonian.
//
// For a Hermitian system operator O coupled to an absorber with response
// chi(w), the positive-frequency operator keeps only energy-lowering
// transitions:
//
//   x+ = sum_j sum_{k: E_j - E_k > tol} sqrt(chi(E_j - E_k)) <E_k|O|E_j> |E_k><E_j|
//
// Matrices are stored in the eigenbasis: entry (k, j) is <E_k|x|E_j>.

#include "photodet/hilbert.hpp"
#include "photodet/spectrum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace photodet {

/// chi(w) = 2 pi g(w)^2 rho(w) of the absorber.
class DetectorResponse {
 public:
  enum class Kind { flat, ohmic, tabulated };

  static DetectorResponse flat(double chi0);
  /// chi0 * w / omega_ref
  static DetectorResponse ohmic(double chi0, double omega_ref);
  /// Piecewise-linear through (omega[i], chi[i]); no extrapolation.
  static DetectorResponse tabulated(std::vector<double> omega, std::vector<double> chi);

  Kind kind() const { return kind_; }
  double chi0() const { return chi0_; }
  double omega_ref() const { return omega_ref_; }
  const std::vector<double>& table_omega() const { return omega_; }
  const std::vector<double>& table_chi() const { return chi_; }

  bool covers(double omega) const;
  /// Throws ParameterError outside a tabulated range.
  double operator()(double omega) const;
  std::string describe() const;

  bool operator==(const DetectorResponse&) const = default;

 private:
  DetectorResponse(Kind kind, double chi0, double omega_ref, std::vector<double> omega,
                   std::vector<double> chi);

  Kind kind_;
  double chi0_;
  double omega_ref_;
  std::vector<double> omega_;
  std::vector<double> chi_;
};

enum class OperatorPart {
  positive_frequency,  // energy-lowering only
  negative_frequency,  // energy-raising only (adjoint of the above)
  full,                // every matrix element, no frequency filtering
};

class DressedOperator {
 public:
  DressedOperator(EigenSystemPtr eigenbasis, Matrix matrix, OperatorPart part, std::string weighting);

  const EigenSystem& eigenbasis() const { return *eigenbasis_; }
  const EigenSystemPtr& eigenbasis_ptr() const { return eigenbasis_; }
  const Matrix& matrix() const { return matrix_; }
  OperatorPart part() const { return part_; }
  /// "unweighted", a response description, or "frequency_weighted".
  const std::string& weighting() const { return weighting_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Eigenbasis coefficients of x|E_j>.
  Vector apply_to_eigenstate(std::size_t j) const;
  /// V x V^dag, for inspection.
  OperatorMatrix bare_basis_view() const;

 private:
  EigenSystemPtr eigenbasis_;
  Matrix matrix_;
  OperatorPart part_;
  std::string weighting_;
};

DressedOperator positive_frequency_op(EigenSystemPtr es, const OperatorMatrix& op,
                                      const DetectorResponse& response);
/// chi == 1; rates scale with the (frequency independent) chi afterwards.
DressedOperator wideband_positive_op(EigenSystemPtr es, const OperatorMatrix& op);
/// Element (j, m), E_j < E_m: -i (E_j - E_m) <E_j|A|E_m>, i.e. +i w_mj A_jm.
DressedOperator frequency_weighted_positive_op(EigenSystemPtr es, const OperatorMatrix& vector_potential);
/// Unfiltered eigenbasis representation of any (not necessarily Hermitian) operator.
DressedOperator eigenbasis_op(EigenSystemPtr es, const OperatorMatrix& op);
DressedOperator adjoint(const DressedOperator& op);

/// Hermiticity tolerance for operators split into +/- frequency parts.
inline constexpr double kOperatorHermitianTol = 1e-10;

}  // namespace photodet
