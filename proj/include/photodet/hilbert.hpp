#pragma once

// Truncated tensor-product Hilbert spaces and dense operator algebra.
//
// Basis ordering: subsystems are ordered (mode 0, mode 1, ..., qubit 0,
// qubit 1, ...) with mode 0 varying fastest, so the flat index of
// |n0, n1, ..., q0, ...> is n0 + d0 * (n1 + d1 * (... )). Qubit level 0 is
// |g>, level 1 is |e>, and sigma_z |e> = +|e>.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace photodet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class PauliAxis { x, y, z, plus, minus };

class HilbertSpace {
 public:
  HilbertSpace(std::vector<std::size_t> mode_dims, std::size_t n_qubits);

  const std::vector<std::size_t>& mode_dims() const { return mode_dims_; }
  std::size_t n_modes() const { return mode_dims_.size(); }
  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t total_dim() const { return total_dim_; }

  // Factor-level view: factors 0..n_modes-1 are modes, the rest qubits.
  std::size_t n_factors() const { return n_modes() + n_qubits_; }
  std::size_t factor_dim(std::size_t factor) const;
  std::size_t stride(std::size_t factor) const { return strides_.at(factor); }
  std::size_t digit(std::size_t index, std::size_t factor) const {
    return (index / strides_[factor]) % factor_dim(factor);
  }
  std::size_t qubit_factor(std::size_t qubit) const { return n_modes() + qubit; }

  bool operator==(const HilbertSpace& other) const {
    return mode_dims_ == other.mode_dims_ && n_qubits_ == other.n_qubits_;
  }

 private:
  std::vector<std::size_t> mode_dims_;
  std::size_t n_qubits_;
  std::size_t total_dim_;
  std::vector<std::size_t> strides_;
};

HilbertSpace make_space(std::vector<std::size_t> mode_dims, std::size_t n_qubits);

class StateVector {
 public:
  StateVector(HilbertSpace space, Vector amplitudes);

  static StateVector basis(const HilbertSpace& space, std::size_t index);

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

Complex inner(const StateVector& bra, const StateVector& ket);

class OperatorMatrix {
 public:
  OperatorMatrix(HilbertSpace space, Matrix elements);

  static OperatorMatrix identity(const HilbertSpace& space);
  static OperatorMatrix zero(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const Matrix& elements() const { return elements_; }
  std::size_t dim() const { return space_.total_dim(); }
  Complex operator()(std::size_t row, std::size_t col) const { return elements_(row, col); }

  /// max |A_ij - conj(A_ji)|
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

 private:
  HilbertSpace space_;
  Matrix elements_;
};

OperatorMatrix adjoint(const OperatorMatrix& op);
OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex scale, const OperatorMatrix& a);
OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector apply(const OperatorMatrix& op, const StateVector& v);

/// Lifts a local factor_dim x factor_dim matrix onto the full space.
OperatorMatrix embed(const HilbertSpace& space, std::size_t factor, const Matrix& local);

OperatorMatrix annihilation_op(const HilbertSpace& space, std::size_t mode);
OperatorMatrix creation_op(const HilbertSpace& space, std::size_t mode);
OperatorMatrix number_op(const HilbertSpace& space, std::size_t mode);
OperatorMatrix pauli_op(const HilbertSpace& space, std::size_t qubit, PauliAxis axis);

/// Flat basis index of the product state with the given per-factor levels.
std::size_t basis_index(const HilbertSpace& space, const std::vector<std::size_t>& levels);

}  // namespace photodet
