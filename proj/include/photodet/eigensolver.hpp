#pragma once

#include "photodet/hilbert.hpp"

namespace photodet {

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Dense Hermitian eigendecomposition (LAPACK zheevd). Reads the lower triangle.
HermitianEigen hermitian_eigen(const Matrix& h);

}  // namespace photodet
