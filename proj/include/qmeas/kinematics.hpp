#pragma once

#include <vector>

#include "qmeas/dynamics.hpp"
#include "qmeas/states.hpp"

namespace qmeas {

struct Outcome {
  double label;
  double prob;
};

// Probability distribution over a finite, strictly ascending label set.
class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::vector<Outcome> entries);

  const std::vector<Outcome>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Probability of the label nearest to `label` within tol.
  double prob_of(double label, double tol = 1e-9) const;

 private:
  std::vector<Outcome> entries_;
};

// Joint probability table Pr{X = x, Y = y} over finite label sets.
class JointTable {
 public:
  JointTable(std::vector<double> x_labels, std::vector<double> y_labels,
             std::vector<std::vector<double>> probs);

  const std::vector<double>& x_labels() const { return x_labels_; }
  const std::vector<double>& y_labels() const { return y_labels_; }
  const std::vector<std::vector<double>>& probs() const { return probs_; }
  double prob(std::size_t xi, std::size_t yi) const {
    return probs_[xi][yi];
  }

  JointTable transposed() const;

 private:
  std::vector<double> x_labels_;
  std::vector<double> y_labels_;
  std::vector<std::vector<double>> probs_;
};

// Joint distribution over outcome tuples of several observables, stored
// densely in row-major order (first axis slowest).
class TupleDistribution {
 public:
  TupleDistribution(std::vector<std::vector<double>> axis_labels,
                    std::vector<double> probs);

  const std::vector<std::vector<double>>& axis_labels() const {
    return axis_labels_;
  }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t axis_count() const { return axis_labels_.size(); }

  double prob(const std::vector<std::size_t>& indices) const;
  OutcomeDistribution marginal(std::size_t axis) const;

 private:
  std::size_t flat_index(const std::vector<std::size_t>& indices) const;

  std::vector<std::vector<double>> axis_labels_;
  std::vector<double> probs_;
};

// Prior distribution of X: the marginal over y.
OutcomeDistribution bayes_prior(const JointTable& joint);

// Posterior distribution of X given Y = y (row-normalized conditional).
OutcomeDistribution bayes_posterior(const JointTable& joint, double y);

// Pr{A = a} = Tr[E(a) rho].
OutcomeDistribution born_distribution(const Observable& a,
                                      const DensityOperator& rho);

// rho -> E(a) rho E(a) / Tr[E(a) rho] upon outcome a.
DensityOperator projection_postulate_update(const Observable& a,
                                            double outcome,
                                            const DensityOperator& rho);

// Joint distribution of successive projective measurements at strictly
// increasing times >= 0 under Hamiltonian h:
// p(a_1..a_n) = Tr[K rho K†], K = E_n U_n ... E_1 U_1.
TupleDistribution successive_joint(const std::vector<Observable>& observables,
                                   const std::vector<double>& times,
                                   const Hamiltonian& h,
                                   const DensityOperator& rho);

// Simultaneous measurement of mutually commuting observables:
// p(a_1..a_n) = Tr[E_1 ... E_n rho E_n ... E_1].
TupleDistribution commuting_joint(const std::vector<Observable>& observables,
                                  const DensityOperator& rho,
                                  double tol = 1e-9);

// Max entrywise difference between two joint tables, matching labels by
// value within label_tol; cells whose label is missing on the other side
// contribute their own magnitude.
double joint_max_abs_diff(const JointTable& a, const JointTable& b,
                          double label_tol = 1e-9);

double distribution_max_abs_diff(const OutcomeDistribution& a,
                                 const OutcomeDistribution& b,
                                 double label_tol = 1e-9);

}  // namespace qmeas
