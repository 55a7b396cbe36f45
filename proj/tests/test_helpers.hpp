#pragma once

#include <doctest.h>

#include "qmeas/presets.hpp"
#include "qmeas/random.hpp"

namespace qmeas::test {

inline Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline DensityOperator ket_state(Index n, Index dim) {
  return pure_state(presets::ket(n, dim));
}

// Independent brute-force trace: plain loop over the diagonal.
inline Cx naive_trace(const Matrix& m) {
  Cx sum = 0.0;
  for (Index i = 0; i < m.rows(); ++i) sum += m(i, i);
  return sum;
}

}  // namespace qmeas::test
