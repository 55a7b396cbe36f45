#include "qmeas/presets.hpp"

#include <cmath>

namespace qmeas {
namespace presets {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Cx(0, -1), Cx(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

StateVector ket(Index n, Index dim) {
  if (n < 0 || n >= dim) throw ParameterError("ket: index out of range");
  Vector psi = Vector::Zero(dim);
  psi(n) = 1.0;
  return StateVector(std::move(psi));
}

StateVector plus() {
  Vector psi(2);
  psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return StateVector(std::move(psi));
}

StateVector bell_phi_plus() {
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(3) = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(psi));
}

Matrix number_operator(Index dim) {
  if (dim < 1) throw DimensionError("number_operator: dim must be >= 1");
  Matrix m = Matrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

}  // namespace presets
}  // namespace qmeas
