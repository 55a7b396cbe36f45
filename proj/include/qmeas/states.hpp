#pragma once

#include <optional>
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

// Normalized pure state |psi>.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  Index dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }

 private:
  Vector amps_;
};

// Trace-one positive Hermitian matrix.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, const Tolerance& tol = {});

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Hermitian operator with cached spectral decomposition {(a_n, E(a_n))}.
class Observable {
 public:
  explicit Observable(Matrix m, const Tolerance& tol = {});

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  const std::vector<SpectralLine>& spectrum() const { return spectrum_; }
  std::size_t outcome_count() const { return spectrum_.size(); }
  std::vector<double> outcomes() const;

  // Spectral projector of the outcome nearest to `outcome` (within tol);
  // throws ParameterError if no outcome matches.
  const Matrix& projector(double outcome, double tol = 1e-9) const;

 private:
  Matrix m_;
  std::vector<SpectralLine> spectrum_;
};

struct PovmEffect {
  double label;
  Matrix effect;
};

// Positive operator valued measure over a finite, strictly ascending label
// set: each effect PSD, effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<PovmEffect> effects, const Tolerance& tol = {});

  Index dim() const { return effects_.front().effect.rows(); }
  const std::vector<PovmEffect>& effects() const { return effects_; }

 private:
  std::vector<PovmEffect> effects_;
};

struct InstrumentBranch {
  double label;
  std::vector<Matrix> kraus;
};

// Outcome-labeled family of CP maps rho -> sum_k K rho K† whose sum is
// trace preserving. Validated at construction: every branch Choi matrix is
// PSD (min eigenvalue >= -1e-8) and sum over all branches of K†K is the
// identity to 1e-9.
class Instrument {
 public:
  explicit Instrument(std::vector<InstrumentBranch> branches,
                      const Tolerance& tol = {});

  Index dim() const { return branches_.front().kraus.front().rows(); }
  const std::vector<InstrumentBranch>& branches() const { return branches_; }

 private:
  std::vector<InstrumentBranch> branches_;
};

// Result of applying one instrument branch: the branch label, the outcome
// probability Tr[sum_k K rho K†], and the renormalized post-measurement
// state (absent when the probability is numerically zero).
struct BranchOutcome {
  double label;
  double probability;
  std::optional<DensityOperator> post_state;
};

DensityOperator pure_state(const StateVector& psi);

// alpha rho1 + (1 - alpha) rho2, 0 < alpha < 1.
DensityOperator mix(const DensityOperator& rho1, const DensityOperator& rho2,
                    double alpha);

std::vector<BranchOutcome> apply_instrument(const Instrument& inst,
                                            const DensityOperator& rho);

// Choi matrix sum_k (K ⊗ I)|Ω><Ω|(K ⊗ I)† with |Ω> = sum_i |i>⊗|i>
// unnormalized; PSD iff the Kraus family describes a CP map.
Matrix choi_matrix(const std::vector<Matrix>& kraus_ops);

// POVM of an instrument: effect(a) = sum_k K†K over branch a.
Povm povm_of(const Instrument& inst, const Tolerance& tol = {});

bool commutes(const Observable& a, const Observable& b, double tol = 1e-9);

}  // namespace qmeas
