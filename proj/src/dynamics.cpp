#include "qmeas/dynamics.hpp"

namespace qmeas {

Hamiltonian::Hamiltonian(Matrix m, const Tolerance& tol) : m_(std::move(m)) {
  require_square(m_, "Hamiltonian");
  require_finite(m_, "Hamiltonian");
  if (!is_hermitian(m_, tol.hermitian)) {
    throw HermiticityError("Hamiltonian: matrix is not Hermitian");
  }
}

DensityOperator evolve_state(const DensityOperator& rho, const Hamiltonian& h,
                             double t) {
  if (rho.dim() != h.dim()) {
    throw DimensionError("evolve_state: state and Hamiltonian differ in dim");
  }
  if (t == 0.0) return rho;
  return DensityOperator(conjugate_by(propagator(h.matrix(), t), rho.matrix()));
}

Matrix heisenberg_projector(const Matrix& e, const Hamiltonian& h, double t) {
  if (e.rows() != h.dim() || e.cols() != h.dim()) {
    throw DimensionError(
        "heisenberg_projector: projector and Hamiltonian differ in dim");
  }
  if (!is_hermitian(e, 1e-8)) {
    throw HermiticityError("heisenberg_projector: input is not Hermitian");
  }
  if (max_abs(e * e - e) > 1e-8) {
    throw ParameterError("heisenberg_projector: input is not idempotent");
  }
  if (t == 0.0) return e;
  const Matrix u = propagator(h.matrix(), -t);  // exp(i h t)
  return conjugate_by(u, e);
}

}  // namespace qmeas
