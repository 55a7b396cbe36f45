#pragma once

#include "qmeas/states.hpp"

namespace qmeas {

// Time-independent Hamiltonian (Hermitian generator, hbar = 1).
class Hamiltonian {
 public:
  explicit Hamiltonian(Matrix m, const Tolerance& tol = {});

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Schrödinger picture: rho -> U rho U† with U = exp(-i h t).
DensityOperator evolve_state(const DensityOperator& rho, const Hamiltonian& h,
                             double t);

// Heisenberg picture: E -> exp(i h t) E exp(-i h t) for a projector E.
Matrix heisenberg_projector(const Matrix& e, const Hamiltonian& h, double t);

}  // namespace qmeas
