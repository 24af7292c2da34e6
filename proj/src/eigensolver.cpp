#include "photodet/eigensolver.hpp"

#include "photodet/errors.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <string>

namespace photodet {

HermitianEigen hermitian_eigen(const Matrix& h) {
  if (h.rows() != h.cols()) throw ValidationError("eigensolver needs a square matrix");
  const auto n = static_cast<lapack_int>(h.rows());
  HermitianEigen out{RealVector(h.rows()), h};
  if (n == 0) return out;
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                                         out.values.data());
  if (info != 0) {
    throw ValidationError("zheevd failed with info = " + std::to_string(info));
  }
  return out;
}

}  // namespace photodet
