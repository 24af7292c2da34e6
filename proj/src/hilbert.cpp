#include "photodet/hilbert.hpp"

#include "photodet/errors.hpp"

#include <cmath>
#include <string>

namespace photodet {

HilbertSpace::HilbertSpace(std::vector<std::size_t> mode_dims, std::size_t n_qubits)
    : mode_dims_(std::move(mode_dims)), n_qubits_(n_qubits), total_dim_(1) {
  if (mode_dims_.empty() && n_qubits_ == 0) {
    throw InvalidSpaceError("Hilbert space needs at least one mode or qubit");
  }
  for (std::size_t m = 0; m < mode_dims_.size(); ++m) {
    if (mode_dims_[m] < 2) {
      throw InvalidSpaceError("mode " + std::to_string(m) + " has truncation " +
                              std::to_string(mode_dims_[m]) + " (must be >= 2)");
    }
  }
  strides_.reserve(n_factors());
  for (std::size_t f = 0; f < n_factors(); ++f) {
    strides_.push_back(total_dim_);
    total_dim_ *= factor_dim(f);
  }
}

std::size_t HilbertSpace::factor_dim(std::size_t factor) const {
  if (factor < mode_dims_.size()) return mode_dims_[factor];
  if (factor < n_factors()) return 2;
  throw LookupError("factor index " + std::to_string(factor) + " out of range");
}

HilbertSpace make_space(std::vector<std::size_t> mode_dims, std::size_t n_qubits) {
  return HilbertSpace(std::move(mode_dims), n_qubits);
}

StateVector::StateVector(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim()) {
    throw IncompatibleSpaceError("state vector length does not match space dimension");
  }
}

StateVector StateVector::basis(const HilbertSpace& space, std::size_t index) {
  if (index >= space.total_dim()) throw LookupError("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  return StateVector(space_, amplitudes_ / n);
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (!(bra.space() == ket.space())) throw IncompatibleSpaceError("inner product across spaces");
  return bra.amplitudes().dot(ket.amplitudes());
}

OperatorMatrix::OperatorMatrix(HilbertSpace space, Matrix elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (elements_.rows() != n || elements_.cols() != n) {
    throw IncompatibleSpaceError("operator matrix shape does not match space dimension");
  }
}

OperatorMatrix OperatorMatrix::identity(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return OperatorMatrix(space, Matrix::Identity(n, n));
}

OperatorMatrix OperatorMatrix::zero(const HilbertSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  return OperatorMatrix(space, Matrix::Zero(n, n));
}

double OperatorMatrix::hermiticity_defect() const {
  return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

void require_same_space(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.space() == b.space())) {
    throw IncompatibleSpaceError("operators act on different Hilbert spaces");
  }
}

}  // namespace

OperatorMatrix adjoint(const OperatorMatrix& op) {
  return OperatorMatrix(op.space(), op.elements().adjoint());
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return OperatorMatrix(a.space(), a.elements() + b.elements());
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return OperatorMatrix(a.space(), a.elements() - b.elements());
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a, b);
  return OperatorMatrix(a.space(), a.elements() * b.elements());
}

OperatorMatrix operator*(Complex scale, const OperatorMatrix& a) {
  return OperatorMatrix(a.space(), scale * a.elements());
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

StateVector apply(const OperatorMatrix& op, const StateVector& v) {
  if (!(op.space() == v.space())) throw IncompatibleSpaceError("operator and state spaces differ");
  return StateVector(v.space(), op.elements() * v.amplitudes());
}

OperatorMatrix embed(const HilbertSpace& space, std::size_t factor, const Matrix& local) {
  const std::size_t d = space.factor_dim(factor);
  if (static_cast<std::size_t>(local.rows()) != d || static_cast<std::size_t>(local.cols()) != d) {
    throw IncompatibleSpaceError("local operator shape does not match factor dimension");
  }
  const std::size_t n = space.total_dim();
  const std::size_t stride = space.stride(factor);
  Matrix full = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t c = space.digit(col, factor);
    const std::size_t rest = col - c * stride;
    for (std::size_t r = 0; r < d; ++r) {
      const Complex v = local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v != Complex{}) {
        full(static_cast<Eigen::Index>(rest + r * stride), static_cast<Eigen::Index>(col)) = v;
      }
    }
  }
  return OperatorMatrix(space, std::move(full));
}

namespace {

std::size_t checked_mode_factor(const HilbertSpace& space, std::size_t mode) {
  if (mode >= space.n_modes()) {
    throw LookupError("mode " + std::to_string(mode) + " out of range (" +
                            std::to_string(space.n_modes()) + " modes)");
  }
  return mode;
}

}  // namespace

OperatorMatrix annihilation_op(const HilbertSpace& space, std::size_t mode) {
  const std::size_t d = space.factor_dim(checked_mode_factor(space, mode));
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t n = 1; n < d; ++n) {
    a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
  }
  return embed(space, mode, a);
}

OperatorMatrix creation_op(const HilbertSpace& space, std::size_t mode) {
  return adjoint(annihilation_op(space, mode));
}

OperatorMatrix number_op(const HilbertSpace& space, std::size_t mode) {
  const std::size_t d = space.factor_dim(checked_mode_factor(space, mode));
  Matrix n = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) n(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = static_cast<double>(k);
  return embed(space, mode, n);
}

OperatorMatrix pauli_op(const HilbertSpace& space, std::size_t qubit, PauliAxis axis) {
  if (qubit >= space.n_qubits()) {
    throw LookupError("qubit " + std::to_string(qubit) + " out of range (" +
                            std::to_string(space.n_qubits()) + " qubits)");
  }
  // Level 0 = |g>, level 1 = |e>; sigma_minus = |g><e|.
  const Complex i{0.0, 1.0};
  Matrix s = Matrix::Zero(2, 2);
  switch (axis) {
    case PauliAxis::x: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case PauliAxis::y: s(0, 1) = i; s(1, 0) = -i; break;
    case PauliAxis::z: s(0, 0) = -1.0; s(1, 1) = 1.0; break;
    case PauliAxis::plus: s(1, 0) = 1.0; break;
    case PauliAxis::minus: s(0, 1) = 1.0; break;
  }
  return embed(space, space.qubit_factor(qubit), s);
}

std::size_t basis_index(const HilbertSpace& space, const std::vector<std::size_t>& levels) {
  if (levels.size() != space.n_factors()) {
    throw IncompatibleSpaceError("basis label needs one level per subsystem");
  }
  std::size_t index = 0;
  for (std::size_t f = 0; f < levels.size(); ++f) {
    if (levels[f] >= space.factor_dim(f)) throw LookupError("basis level out of range");
    index += levels[f] * space.stride(f);
  }
  return index;
}

}  // namespace photodet
