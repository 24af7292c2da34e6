// OpenMP implementations. Loops are split over independent output elements
// so results do not depend on the number of threads.

#include "kernels_omp.hpp"

#include <omp.h>

#include <exception>

namespace photodet::kernels::omp {

using Index = Eigen::Index;

namespace {

// Captures the first exception thrown inside a parallel region.
class ExceptionSlot {
 public:
  template <typename F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(photodet_exception_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

Matrix to_eigenbasis(const Matrix& states, const Matrix& op) {
  const Index n = states.cols();
  Matrix out(n, n);
  const Index blocks = (n + kColumnBlock - 1) / kColumnBlock;
#pragma omp parallel for schedule(dynamic)
  for (Index b = 0; b < blocks; ++b) {
    const Index first = b * kColumnBlock;
    const Index width = std::min(kColumnBlock, n - first);
    out.middleCols(first, width).noalias() = states.adjoint() * (op * states.middleCols(first, width));
  }
  return out;
}

Matrix lowering_part(const Matrix& o_eig, const RealVector& energies, double tol,
                     const TransitionWeight& weight) {
  const Index n = o_eig.rows();
  Matrix x = Matrix::Zero(n, n);
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 8)
  for (Index j = 0; j < n; ++j) {
    slot.run([&] {
      for (Index k = 0; k < j; ++k) {
        const double w = energies(j) - energies(k);
        if (w > tol && o_eig(k, j) != Complex{}) x(k, j) = weight(w) * o_eig(k, j);
      }
    });
  }
  slot.rethrow();
  return x;
}

RealVector column_weights(const Matrix& x) {
  RealVector out(x.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < x.cols(); ++j) {
    double s = 0.0;
    for (Index k = 0; k < x.rows(); ++k) s += std::norm(x(k, j));
    out(j) = s;
  }
  return out;
}

std::vector<double> lorentzian_sum(std::span<const double> centers, std::span<const double> weights,
                                   std::span<const double> grid, double eta) {
  std::vector<double> out(grid.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < centers.size(); ++t) {
      s += weights[t] * lorentzian(grid[static_cast<std::size_t>(i)] - centers[t], eta);
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

std::vector<double> sinc_squared_sum(std::span<const double> freqs, std::span<const double> weights,
                                     std::span<const double> times) {
  std::vector<double> out(times.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t t = 0; t < freqs.size(); ++t) {
      const double f = sinc_kernel(times[static_cast<std::size_t>(i)], freqs[t]);
      s += weights[t] * f * f;
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body) {
  ExceptionSlot slot;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    slot.run([&] { body(static_cast<std::size_t>(i)); });
  }
  slot.rethrow();
}

}  // namespace photodet::kernels::omp
