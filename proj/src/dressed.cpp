#include "photodet/dressed.hpp"

#include "photodet/errors.hpp"
#include "photodet/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace photodet {

namespace {

using Index = Eigen::Index;

// Eigenbasis elements below this fraction of the largest are treated as
// zero before frequency weighting (they only carry eigensolver noise).
constexpr double kNoiseFloor = 1e-14;

void require_hermitian(const OperatorMatrix& op, const char* what) {
  const double scale = std::max(1.0, op.elements().cwiseAbs().maxCoeff());
  if (op.hermiticity_defect() > kOperatorHermitianTol * scale) {
    throw ValidationError(std::string(what) + ": operator must be Hermitian");
  }
}

Matrix eigenbasis_matrix(const EigenSystem& es, const OperatorMatrix& op) {
  if (!(op.space() == es.source_space)) {
    throw IncompatibleSpaceError("operator does not act on the eigensystem's space");
  }
  return kernels::to_eigenbasis(es.states, op.elements());
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

DetectorResponse::DetectorResponse(Kind kind, double chi0, double omega_ref, std::vector<double> omega,
                                   std::vector<double> chi)
    : kind_(kind), chi0_(chi0), omega_ref_(omega_ref), omega_(std::move(omega)), chi_(std::move(chi)) {}

DetectorResponse DetectorResponse::flat(double chi0) {
  if (!(std::isfinite(chi0) && chi0 >= 0.0)) throw ParameterError("flat response: chi0 must be >= 0");
  return DetectorResponse(Kind::flat, chi0, 1.0, {}, {});
}

DetectorResponse DetectorResponse::ohmic(double chi0, double omega_ref) {
  if (!(std::isfinite(chi0) && chi0 >= 0.0)) throw ParameterError("ohmic response: chi0 must be >= 0");
  if (!(std::isfinite(omega_ref) && omega_ref > 0.0)) throw ParameterError("ohmic response: omega_ref must be > 0");
  return DetectorResponse(Kind::ohmic, chi0, omega_ref, {}, {});
}

DetectorResponse DetectorResponse::tabulated(std::vector<double> omega, std::vector<double> chi) {
  if (omega.size() < 2 || omega.size() != chi.size()) {
    throw ParameterError("tabulated response needs >= 2 (omega, chi) pairs");
  }
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(omega[i]) || !std::isfinite(chi[i]) || chi[i] < 0.0) {
      throw ParameterError("tabulated response values must be finite with chi >= 0");
    }
    if (i > 0 && !(omega[i] > omega[i - 1])) {
      throw ParameterError("tabulated response grid must be strictly increasing");
    }
  }
  return DetectorResponse(Kind::tabulated, 1.0, 1.0, std::move(omega), std::move(chi));
}

bool DetectorResponse::covers(double omega) const {
  if (kind_ != Kind::tabulated) return true;
  return omega >= omega_.front() && omega <= omega_.back();
}

double DetectorResponse::operator()(double omega) const {
  switch (kind_) {
    case Kind::flat:
      return chi0_;
    case Kind::ohmic:
      return chi0_ * omega / omega_ref_;
    case Kind::tabulated:
      break;
  }
  if (!covers(omega)) {
    throw ParameterError("frequency " + format_number(omega) + " outside tabulated response [" +
                         format_number(omega_.front()) + ", " + format_number(omega_.back()) + "]");
  }
  const auto hi = std::upper_bound(omega_.begin(), omega_.end(), omega);
  if (hi == omega_.end()) return chi_.back();
  const auto i = static_cast<std::size_t>(hi - omega_.begin());
  const double t = (omega - omega_[i - 1]) / (omega_[i] - omega_[i - 1]);
  return chi_[i - 1] + t * (chi_[i] - chi_[i - 1]);
}

std::string DetectorResponse::describe() const {
  switch (kind_) {
    case Kind::flat:
      return "flat(chi0=" + format_number(chi0_) + ")";
    case Kind::ohmic:
      return "ohmic(chi0=" + format_number(chi0_) + ", omega_ref=" + format_number(omega_ref_) + ")";
    case Kind::tabulated:
      return "tabulated(" + std::to_string(omega_.size()) + " points, omega in [" + format_number(omega_.front()) +
             ", " + format_number(omega_.back()) + "])";
  }
  return {};
}

DressedOperator::DressedOperator(EigenSystemPtr eigenbasis, Matrix matrix, OperatorPart part,
                                 std::string weighting)
    : eigenbasis_(std::move(eigenbasis)), matrix_(std::move(matrix)), part_(part), weighting_(std::move(weighting)) {
  if (!eigenbasis_) throw ValidationError("dressed operator needs an eigenbasis");
  const auto n = static_cast<Index>(eigenbasis_->dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw IncompatibleSpaceError("dressed operator shape does not match its eigenbasis");
  }
}

Vector DressedOperator::apply_to_eigenstate(std::size_t j) const {
  if (j >= dim()) throw std::out_of_range("eigenstate index out of range");
  return matrix_.col(static_cast<Index>(j));
}

OperatorMatrix DressedOperator::bare_basis_view() const {
  const Matrix& v = eigenbasis_->states;
  return OperatorMatrix(eigenbasis_->source_space, v * matrix_ * v.adjoint());
}

DressedOperator positive_frequency_op(EigenSystemPtr es, const OperatorMatrix& op,
                                      const DetectorResponse& response) {
  require_hermitian(op, "positive_frequency_op");
  Matrix o = eigenbasis_matrix(*es, op);
  if (response.kind() == DetectorResponse::Kind::tabulated) {
    const double floor = kNoiseFloor * o.cwiseAbs().maxCoeff();
    o = o.unaryExpr([floor](Complex c) { return std::abs(c) <= floor ? Complex{} : c; });
  }
  const auto weight = [&response](double w) { return Complex{std::sqrt(response(w)), 0.0}; };
  Matrix x = kernels::lowering_part(o, es->energies, es->degeneracy_tol, weight);
  return DressedOperator(std::move(es), std::move(x), OperatorPart::positive_frequency, response.describe());
}

DressedOperator wideband_positive_op(EigenSystemPtr es, const OperatorMatrix& op) {
  require_hermitian(op, "wideband_positive_op");
  const Matrix o = eigenbasis_matrix(*es, op);
  Matrix x = kernels::lowering_part(o, es->energies, es->degeneracy_tol,
                                    [](double) { return Complex{1.0, 0.0}; });
  return DressedOperator(std::move(es), std::move(x), OperatorPart::positive_frequency, "unweighted");
}

DressedOperator frequency_weighted_positive_op(EigenSystemPtr es, const OperatorMatrix& vector_potential) {
  require_hermitian(vector_potential, "frequency_weighted_positive_op");
  const Matrix a = eigenbasis_matrix(*es, vector_potential);
  // -i (E_j - E_m) with E_j < E_m equals +i times the transition frequency.
  Matrix e = kernels::lowering_part(a, es->energies, es->degeneracy_tol,
                                    [](double w) { return Complex{0.0, w}; });
  return DressedOperator(std::move(es), std::move(e), OperatorPart::positive_frequency, "frequency_weighted");
}

DressedOperator eigenbasis_op(EigenSystemPtr es, const OperatorMatrix& op) {
  Matrix o = eigenbasis_matrix(*es, op);
  return DressedOperator(std::move(es), std::move(o), OperatorPart::full, "unweighted");
}

DressedOperator adjoint(const DressedOperator& op) {
  OperatorPart part = OperatorPart::full;
  if (op.part() == OperatorPart::positive_frequency) part = OperatorPart::negative_frequency;
  if (op.part() == OperatorPart::negative_frequency) part = OperatorPart::positive_frequency;
  return DressedOperator(op.eigenbasis_ptr(), op.matrix().adjoint(), part, op.weighting());
}

}  // namespace photodet
