#include "qmeas/states.hpp"

#include <cmath>
#include <string>

namespace qmeas {

namespace {

void require_ascending_labels(const std::vector<double>& labels,
                              const char* who) {
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (!(labels[i] > labels[i - 1])) {
      throw ParameterError(std::string(who) +
                           ": labels must be strictly ascending");
    }
  }
}

}  // namespace

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) {
    throw DimensionError("StateVector: dim must be >= 1");
  }
  if (!amps_.allFinite()) {
    throw ParameterError("StateVector: non-finite amplitude");
  }
  if (std::abs(amps_.norm() - 1.0) > 1e-10) {
    throw NormalizationError("StateVector: norm deviates from 1 by " +
                             std::to_string(std::abs(amps_.norm() - 1.0)));
  }
}

DensityOperator::DensityOperator(Matrix m, const Tolerance& tol)
    : m_(std::move(m)) {
  tol.validate();
  require_square(m_, "DensityOperator");
  require_finite(m_, "DensityOperator");
  if (!is_hermitian(m_, tol.hermitian)) {
    throw HermiticityError("DensityOperator: matrix is not Hermitian");
  }
  if (std::abs(m_.trace().real() - 1.0) > tol.hermitian ||
      std::abs(m_.trace().imag()) > tol.hermitian) {
    throw NormalizationError("DensityOperator: trace deviates from 1 by " +
                             std::to_string(std::abs(m_.trace() - Cx(1.0))));
  }
  if (!is_psd(m_, tol.hermitian)) {
    throw ParameterError("DensityOperator: matrix is not positive semidefinite");
  }
}

Observable::Observable(Matrix m, const Tolerance& tol) : m_(std::move(m)) {
  spectrum_ = hermitian_spectral(m_, tol);
}

std::vector<double> Observable::outcomes() const {
  std::vector<double> out;
  out.reserve(spectrum_.size());
  for (const auto& line : spectrum_) out.push_back(line.value);
  return out;
}

const Matrix& Observable::projector(double outcome, double tol) const {
  for (const auto& line : spectrum_) {
    if (std::abs(line.value - outcome) <= tol) return line.projector;
  }
  throw ParameterError("Observable: " + std::to_string(outcome) +
                       " is not an outcome");
}

Povm::Povm(std::vector<PovmEffect> effects, const Tolerance& tol)
    : effects_(std::move(effects)) {
  tol.validate();
  if (effects_.empty()) throw ParameterError("Povm: no effects");
  std::vector<double> labels;
  Matrix sum = Matrix::Zero(effects_.front().effect.rows(),
                            effects_.front().effect.cols());
  for (const auto& e : effects_) {
    require_square(e.effect, "Povm");
    require_same_dim(e.effect, sum, "Povm");
    if (!is_psd(e.effect, tol.hermitian)) {
      throw ParameterError("Povm: effect is not positive semidefinite");
    }
    labels.push_back(e.label);
    sum += e.effect;
  }
  require_ascending_labels(labels, "Povm");
  if (max_abs_diff(sum, identity(sum.rows())) > tol.hermitian) {
    throw ParameterError("Povm: effects do not sum to the identity");
  }
}

Instrument::Instrument(std::vector<InstrumentBranch> branches,
                       const Tolerance& tol)
    : branches_(std::move(branches)) {
  tol.validate();
  if (branches_.empty()) throw ParameterError("Instrument: no branches");
  std::vector<double> labels;
  Index dim = -1;
  for (const auto& b : branches_) {
    if (b.kraus.empty()) {
      throw ParameterError("Instrument: branch without Kraus operators");
    }
    for (const auto& k : b.kraus) {
      require_square(k, "Instrument");
      require_finite(k, "Instrument");
      if (dim < 0) dim = k.rows();
      if (k.rows() != dim) {
        throw DimensionError("Instrument: Kraus operators differ in dim");
      }
    }
    labels.push_back(b.label);
  }
  require_ascending_labels(labels, "Instrument");

  Matrix normalization = Matrix::Zero(dim, dim);
  for (const auto& b : branches_) {
    if (!is_psd(choi_matrix(b.kraus), 1e-8)) {
      throw ParameterError("Instrument: branch Choi matrix is not PSD");
    }
    for (const auto& k : b.kraus) normalization += k.adjoint() * k;
  }
  if (max_abs_diff(normalization, identity(dim)) > tol.hermitian) {
    throw ParameterError(
        "Instrument: sum of K†K deviates from the identity by " +
        std::to_string(max_abs_diff(normalization, identity(dim))));
  }
}

DensityOperator pure_state(const StateVector& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator mix(const DensityOperator& rho1, const DensityOperator& rho2,
                    double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("mix: alpha must lie in (0, 1)");
  }
  if (rho1.dim() != rho2.dim()) {
    throw DimensionError("mix: states differ in dim");
  }
  return DensityOperator(alpha * rho1.matrix() +
                         (1.0 - alpha) * rho2.matrix());
}

std::vector<BranchOutcome> apply_instrument(const Instrument& inst,
                                            const DensityOperator& rho) {
  if (inst.dim() != rho.dim()) {
    throw DimensionError("apply_instrument: instrument and state differ in dim");
  }
  std::vector<BranchOutcome> out;
  out.reserve(inst.branches().size());
  for (const auto& b : inst.branches()) {
    Matrix mapped = Matrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : b.kraus) mapped += k * rho.matrix() * k.adjoint();
    const double p = mapped.trace().real();
    if (p <= 1e-12) {
      out.push_back({b.label, p, std::nullopt});
    } else {
      out.push_back({b.label, p, DensityOperator(mapped / p)});
    }
  }
  return out;
}

Matrix choi_matrix(const std::vector<Matrix>& kraus_ops) {
  if (kraus_ops.empty()) throw ParameterError("choi_matrix: no Kraus operators");
  const Index d = kraus_ops.front().rows();
  for (const auto& k : kraus_ops) {
    require_square(k, "choi_matrix");
    if (k.rows() != d) {
      throw DimensionError("choi_matrix: Kraus operators differ in dim");
    }
  }
  // (K ⊗ I)|Ω> is the row-major flattening of K.
  Matrix choi = Matrix::Zero(d * d, d * d);
  for (const auto& k : kraus_ops) {
    Vector flat(d * d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) flat(i * d + j) = k(i, j);
    }
    choi += flat * flat.adjoint();
  }
  return choi;
}

Povm povm_of(const Instrument& inst, const Tolerance& tol) {
  std::vector<PovmEffect> effects;
  effects.reserve(inst.branches().size());
  for (const auto& b : inst.branches()) {
    Matrix effect = Matrix::Zero(inst.dim(), inst.dim());
    for (const auto& k : b.kraus) effect += k.adjoint() * k;
    effects.push_back({b.label, std::move(effect)});
  }
  return Povm(std::move(effects), tol);
}

bool commutes(const Observable& a, const Observable& b, double tol) {
  if (a.dim() != b.dim()) {
    throw DimensionError("commutes: observables differ in dim");
  }
  return max_abs(a.matrix() * b.matrix() - b.matrix() * a.matrix()) <= tol;
}

}  // namespace qmeas
