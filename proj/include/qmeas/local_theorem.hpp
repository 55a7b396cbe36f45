#pragma once

#include <optional>

#include "qmeas/measurement.hpp"

namespace qmeas {

// Two noninteracting systems S1, S2 with free Hamiltonians h1, h2; an
// apparatus local at S1 measures a_obs at time t1 (interaction duration
// dt), b_obs is measured on S2 at time t2 >= t1 + dt. rho0 is the initial
// state of S1 ⊗ S2. h_app, when set, is the free Hamiltonian of the
// apparatus after the interaction; the probe readout stays fixed at
// t1 + dt, so it cannot affect the joint statistics.
class LocalSetup {
 public:
  LocalSetup(Hamiltonian h1, Hamiltonian h2, MeasurementModel model,
             Observable a_obs, Observable b_obs, double t1, double dt,
             double t2, DensityOperator rho0,
             std::optional<Hamiltonian> h_app = std::nullopt);

  const Hamiltonian& h1() const { return h1_; }
  const Hamiltonian& h2() const { return h2_; }
  const MeasurementModel& model() const { return model_; }
  const Observable& a_obs() const { return a_obs_; }
  const Observable& b_obs() const { return b_obs_; }
  double t1() const { return t1_; }
  double dt() const { return dt_; }
  double t2() const { return t2_; }
  const DensityOperator& rho0() const { return rho0_; }
  const std::optional<Hamiltonian>& h_app() const { return h_app_; }

  Index dim1() const { return a_obs_.dim(); }
  Index dim2() const { return b_obs_.dim(); }

  LocalSetup with_rho0(DensityOperator rho) const;

 private:
  Hamiltonian h1_;
  Hamiltonian h2_;
  MeasurementModel model_;
  Observable a_obs_;
  Observable b_obs_;
  double t1_;
  double dt_;
  double t2_;
  DensityOperator rho0_;
  std::optional<Hamiltonian> h_app_;
};

// Closed form of the local measurement theorem:
// Pr{A(t1)=a, B(t2)=b} =
//   Tr[(e^{iH1t1} E^A(a) e^{-iH1t1} ⊗ e^{iH2t2} E^B(b) e^{-iH2t2}) rho].
// x labels: A outcomes; y labels: B outcomes.
JointTable joint_formula(const LocalSetup& s);

// Brute-force composite-system oracle: free-evolve rho0 to t1, adjoin the
// apparatus, apply U ⊗ e^{-iH2 dt}, free-evolve the remaining t2-t1-dt,
// then read probe and B as commuting projectors on disjoint factors; no
// projection postulate enters at any step. x labels: probe outcomes; y
// labels: B outcomes.
JointTable joint_simulated(const LocalSetup& s);

// Positive operator family F(a,b) with Pr{a,b} = Tr[F(a,b) rho].
struct JointOperatorMeasure {
  struct Entry {
    double a;
    double b;
    Matrix f;
  };
  std::vector<Entry> entries;

  Matrix sum_over_b(double a, double label_tol = 1e-9) const;
  Matrix sum_over_a(double b, double label_tol = 1e-9) const;
  Matrix total() const;
};

// Outcome of the F(a,b) reconstruction and the marginal/product checks,
// as max-abs deviations.
struct MarginalReport {
  JointOperatorMeasure f;
  double a_marginal_violation;    // sum_b F(a,b) vs E^A(a,t1) ⊗ 1
  double b_marginal_violation;    // sum_a F(a,b) vs 1 ⊗ E^B(b,t2)
  double product_violation;       // F(a,b) vs product of its marginals
  double psd_violation;           // most negative F eigenvalue, clamped >= 0
  double completeness_violation;  // sum F(a,b) vs identity

  double worst() const;
  bool pass(double tol) const { return worst() <= tol; }
};

// Tomographic reconstruction of F(a,b) from joint_simulated over the
// matrix-unit-derived state family, plus Eqs. of marginal consistency and
// the Davies product step.
MarginalReport marginal_checks(const LocalSetup& s);

struct AffinityReport {
  double max_violation;
};

// Entrywise check of Pr{..|a rho1 + (1-a) rho2} against the mixture of
// the component joints.
AffinityReport affinity_check(const LocalSetup& s, const DensityOperator& rho1,
                              const DensityOperator& rho2, double alpha);

// B marginal of the simulated joint; equals
// Tr[(1 ⊗ e^{iH2t2} E^B(b) e^{-iH2t2}) rho] independent of the apparatus
// (no-signaling).
OutcomeDistribution simulated_b_marginal(const LocalSetup& s);
OutcomeDistribution closed_form_b_marginal(const LocalSetup& s);

// A marginal of the simulated joint; equals
// Tr[(e^{iH1t1} E^A(a) e^{-iH1t1} ⊗ 1) rho].
OutcomeDistribution simulated_a_marginal(const LocalSetup& s);
OutcomeDistribution closed_form_a_marginal(const LocalSetup& s);

}  // namespace qmeas
