#pragma once

#include "qmeas/kinematics.hpp"

namespace qmeas {

// Indirect measurement model: apparatus prepared in sigma, coupled to the
// object by the interaction unitary u on apparatus ⊗ object, read out
// through the probe observable. Tensor ordering is apparatus ⊗ object
// throughout (sigma ⊗ rho).
class MeasurementModel {
 public:
  MeasurementModel(Index apparatus_dim, Index object_dim,
                   DensityOperator sigma, Matrix u, Observable probe,
                   const Tolerance& tol = {});

  Index apparatus_dim() const { return apparatus_dim_; }
  Index object_dim() const { return object_dim_; }
  Index total_dim() const { return apparatus_dim_ * object_dim_; }
  const DensityOperator& sigma() const { return sigma_; }
  const Matrix& unitary() const { return u_; }
  const Observable& probe() const { return probe_; }

  // U (sigma ⊗ rho) U†, the composite state right after the interaction.
  Matrix coupled_state(const DensityOperator& rho) const;

 private:
  Index apparatus_dim_;
  Index object_dim_;
  DensityOperator sigma_;
  Matrix u_;
  Observable probe_;
};

// Transducer recipe: U maps phi_n ⊗ xi to post_n ⊗ pointer_n (in
// apparatus ⊗ object order: xi ⊗ phi_n to pointer_n ⊗ post_n), where
// phi_n are the eigenstates of the measured observable, xi is the prepared
// apparatus state, the pointer states are orthonormal and the post states
// are arbitrary. post_n = phi_n reproduces the projection postulate.
struct TransducerSpec {
  Observable measured;                      // on the object, nondegenerate
  StateVector xi;                           // apparatus preparation
  std::vector<StateVector> pointer_states;  // orthonormal, one per outcome
  std::vector<StateVector> post_states;     // one per outcome
  // Deterministically permutes the basis-extension order used to complete
  // the interaction isometry to a unitary; statistics on inputs of the form
  // sigma ⊗ rho are independent of it.
  unsigned completion_seed = 0;
};

MeasurementModel build_transducer(const TransducerSpec& spec,
                                  const Tolerance& tol = {});

// Pr{a} = Tr[(E(a) ⊗ 1) U (sigma ⊗ rho) U†] over the probe spectrum.
OutcomeDistribution outcome_distribution(const MeasurementModel& m,
                                         const DensityOperator& rho);

// Nonselective measurement: rho -> Tr_A[U (sigma ⊗ rho) U†].
DensityOperator prior_state(const MeasurementModel& m,
                            const DensityOperator& rho);

// State reduction conditional on the probe outcome:
// Tr_A[(E(a) ⊗ 1) U (sigma ⊗ rho) U†] / Pr{a}.
DensityOperator posterior_state(const MeasurementModel& m,
                                const DensityOperator& rho, double outcome);

// Kraus representation of the branch maps
// rho -> Tr_A[(E(a) ⊗ 1) U (sigma ⊗ rho) U†]:
// K_{a,u,k} = sqrt(s_k) (<u| ⊗ 1) U (|chi_k> ⊗ 1) over the spectral
// decomposition sigma = sum_k s_k |chi_k><chi_k| and an orthonormal basis
// {u} of the range of E(a).
Instrument induced_instrument(const MeasurementModel& m,
                              const Tolerance& tol = {});

// Joint table of (object observable B, probe outcome) read from the
// coupled state with commuting projectors E(a) ⊗ E(b); x labels are the B
// outcomes, y labels the probe outcomes. Conditioning this table on the
// probe outcome via bayes_posterior reproduces the Born statistics of B in
// posterior_state, which is the quantum Bayes principle in assertable form.
JointTable probe_object_joint(const MeasurementModel& m,
                              const DensityOperator& rho,
                              const Observable& b_obs);

}  // namespace qmeas
