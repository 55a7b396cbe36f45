#include "qmeas/verify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qmeas/presets.hpp"

namespace qmeas {

double check_theorem_equivalence(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng);
    worst = std::max(worst,
                     joint_max_abs_diff(joint_simulated(s), joint_formula(s)));
  }
  return worst;
}

double check_a_marginal_consistency(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng);
    worst = std::max(worst,
                     distribution_max_abs_diff(simulated_a_marginal(s),
                                               closed_form_a_marginal(s)));
  }
  return worst;
}

double check_no_signaling(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng);
    // A second, unrelated apparatus measuring the same A.
    const Index da2 = rng.uniform_int(static_cast<int>(s.dim1()), 4);
    const MeasurementModel other =
        build_transducer(random_transducer_spec(rng, s.a_obs(), da2));
    const LocalSetup s2(s.h1(), s.h2(), other, s.a_obs(), s.b_obs(), s.t1(),
                        s.dt(), s.t2(), s.rho0());
    const OutcomeDistribution b1 = simulated_b_marginal(s);
    const OutcomeDistribution b2 = simulated_b_marginal(s2);
    const OutcomeDistribution closed = closed_form_b_marginal(s);
    worst = std::max(worst, distribution_max_abs_diff(b1, b2));
    worst = std::max(worst, distribution_max_abs_diff(b1, closed));
    worst = std::max(worst, distribution_max_abs_diff(b2, closed));
  }
  return worst;
}

double check_affinity(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng);
    const DensityOperator rho1 = random_density(rng, s.dim1() * s.dim2());
    const DensityOperator rho2 = random_density(rng, s.dim1() * s.dim2());
    const double alpha = rng.uniform(0.05, 0.95);
    worst = std::max(worst, affinity_check(s, rho1, rho2, alpha).max_violation);
  }
  return worst;
}

namespace {

MeasurementModel random_model(Rng& rng, bool von_neumann = false) {
  const Index d = rng.uniform_int(2, 3);
  const Index da = rng.uniform_int(static_cast<int>(d), 4);
  const Observable measured = random_nondegenerate_observable(rng, d);
  return build_transducer(
      random_transducer_spec(rng, measured, da, von_neumann));
}

}  // namespace

double check_instrument_choi(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Instrument inst = induced_instrument(random_model(rng));
    for (const auto& branch : inst.branches()) {
      const Matrix choi = choi_matrix(branch.kraus);
      Eigen::SelfAdjointEigenSolver<Matrix> solver(choi);
      worst = std::max(worst, -solver.eigenvalues().minCoeff());
    }
  }
  return std::max(worst, 0.0);
}

double check_instrument_normalization(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Instrument inst = induced_instrument(random_model(rng));
    Matrix sum = Matrix::Zero(inst.dim(), inst.dim());
    for (const auto& branch : inst.branches()) {
      for (const auto& k : branch.kraus) sum += k.adjoint() * k;
    }
    worst = std::max(worst, max_abs_diff(sum, identity(inst.dim())));
  }
  return worst;
}

double check_instrument_equivalence(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const MeasurementModel model = random_model(rng);
    const Instrument inst = induced_instrument(model);
    const DensityOperator rho = random_density(rng, model.object_dim());
    const OutcomeDistribution dist = outcome_distribution(model, rho);
    const auto branches = apply_instrument(inst, rho);
    for (const auto& b : branches) {
      worst = std::max(worst, std::abs(b.probability - dist.prob_of(b.label)));
      if (b.probability > 1e-9 && b.post_state) {
        worst = std::max(
            worst, max_abs_diff(b.post_state->matrix(),
                                posterior_state(model, rho, b.label).matrix()));
      }
    }
  }
  return worst;
}

double check_quantum_bayes(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const MeasurementModel model = random_model(rng);
    const DensityOperator rho = random_density(rng, model.object_dim());
    for (int k = 0; k < 3; ++k) {
      const Observable b_obs =
          random_nondegenerate_observable(rng, model.object_dim());
      const JointTable joint = probe_object_joint(model, rho, b_obs);
      for (std::size_t ai = 0; ai < joint.y_labels().size(); ++ai) {
        double p_a = 0.0;
        for (std::size_t bi = 0; bi < joint.x_labels().size(); ++bi) {
          p_a += joint.prob(bi, ai);
        }
        if (p_a <= 1e-6) continue;
        const double a = joint.y_labels()[ai];
        const OutcomeDistribution classical = bayes_posterior(joint, a);
        const OutcomeDistribution quantum =
            born_distribution(b_obs, posterior_state(model, rho, a));
        worst = std::max(worst,
                         distribution_max_abs_diff(classical, quantum));
      }
    }
  }
  return worst;
}

double check_statistical_formula(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d = rng.uniform_int(2, 3);
    const Index da = rng.uniform_int(static_cast<int>(d), 4);
    const Observable measured = random_nondegenerate_observable(rng, d);
    const MeasurementModel model =
        build_transducer(random_transducer_spec(rng, measured, da));
    const DensityOperator rho = random_density(rng, d);
    worst = std::max(worst, distribution_max_abs_diff(
                                outcome_distribution(model, rho),
                                born_distribution(measured, rho)));
  }
  return worst;
}

double check_projection_recovery(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d = rng.uniform_int(2, 3);
    const Index da = rng.uniform_int(static_cast<int>(d), 4);
    const Observable measured = random_nondegenerate_observable(rng, d);
    const MeasurementModel model = build_transducer(
        random_transducer_spec(rng, measured, da, /*von_neumann=*/true));
    const DensityOperator rho = random_density(rng, d);
    for (const auto& line : measured.spectrum()) {
      const double p = trace_product(line.projector, rho.matrix()).real();
      if (p <= 1e-12) continue;
      worst = std::max(
          worst,
          max_abs_diff(
              posterior_state(model, rho, line.value).matrix(),
              projection_postulate_update(measured, line.value, rho).matrix()));
    }
  }
  return worst;
}

double check_photon_counting(Rng& rng, int trials) {
  const Index dim = 4;
  const Observable number(presets::number_operator(dim));
  std::vector<StateVector> pointers;
  std::vector<StateVector> posts;
  for (Index n = 0; n < dim; ++n) {
    pointers.push_back(presets::ket(n, dim));
    posts.push_back(presets::ket(0, dim));
  }
  const MeasurementModel model = build_transducer(
      TransducerSpec{number, presets::ket(0, dim), pointers, posts});
  const Matrix vacuum = pure_state(presets::ket(0, dim)).matrix();

  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const StateVector psi = random_state_vector(rng, dim);
    const OutcomeDistribution dist =
        outcome_distribution(model, pure_state(psi));
    for (Index n = 0; n < dim; ++n) {
      const double expected = std::norm(psi.amplitudes()(n));
      worst = std::max(
          worst, std::abs(dist.prob_of(static_cast<double>(n)) - expected));
      if (expected > 1e-12) {
        worst = std::max(
            worst,
            max_abs_diff(posterior_state(model, pure_state(psi),
                                         static_cast<double>(n))
                             .matrix(),
                         vacuum));
      }
    }
  }
  return worst;
}

double check_nonselective_decomposition(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const MeasurementModel model = random_model(rng);
    const DensityOperator rho = random_density(rng, model.object_dim());
    const OutcomeDistribution dist = outcome_distribution(model, rho);
    Matrix mixture = Matrix::Zero(model.object_dim(), model.object_dim());
    for (const auto& e : dist.entries()) {
      if (e.prob <= 1e-12) continue;
      mixture += e.prob * posterior_state(model, rho, e.label).matrix();
    }
    worst = std::max(worst,
                     max_abs_diff(mixture, prior_state(model, rho).matrix()));
  }
  return worst;
}

double check_marginal_reconstruction(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng, 2, 2, 3);
    worst = std::max(worst, marginal_checks(s).worst());
  }
  return worst;
}

double check_bayes_reweighting(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int nx = rng.uniform_int(2, 4);
    const int ny = rng.uniform_int(2, 4);
    std::vector<double> xs, ys;
    for (int i = 0; i < nx; ++i) xs.push_back(i);
    for (int j = 0; j < ny; ++j) ys.push_back(j);
    std::vector<std::vector<double>> probs(nx, std::vector<double>(ny, 0.0));
    double total = 0.0;
    for (auto& row : probs) {
      for (double& p : row) {
        p = rng.uniform(0.01, 1.0);
        total += p;
      }
    }
    for (auto& row : probs) {
      for (double& p : row) p /= total;
    }
    const JointTable joint(xs, ys, probs);
    const OutcomeDistribution prior = bayes_prior(joint);
    const OutcomeDistribution y_marginal = bayes_prior(joint.transposed());
    std::vector<double> reweighted(static_cast<std::size_t>(nx), 0.0);
    for (int j = 0; j < ny; ++j) {
      const OutcomeDistribution posterior = bayes_posterior(joint, ys[j]);
      for (int i = 0; i < nx; ++i) {
        reweighted[i] +=
            y_marginal.entries()[j].prob * posterior.entries()[i].prob;
      }
    }
    for (int i = 0; i < nx; ++i) {
      worst = std::max(worst,
                       std::abs(reweighted[i] - prior.entries()[i].prob));
    }
  }
  return worst;
}

double check_rules_agreement(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d1 = rng.uniform_int(2, 3);
    const Index d2 = rng.uniform_int(2, 3);
    const Observable a(tensor_product(
        random_nondegenerate_observable(rng, d1).matrix(), identity(d2)));
    const Observable b(tensor_product(
        identity(d1), random_nondegenerate_observable(rng, d2).matrix()));
    const DensityOperator rho = random_density(rng, d1 * d2);
    const Hamiltonian h_zero(Matrix::Zero(d1 * d2, d1 * d2));
    const TupleDistribution successive =
        successive_joint({a, b}, {1.0, 2.0}, h_zero, rho);
    const TupleDistribution reversed =
        successive_joint({b, a}, {1.0, 2.0}, h_zero, rho);
    const TupleDistribution simultaneous = commuting_joint({a, b}, rho);
    for (std::size_t i = 0; i < successive.probs().size(); ++i) {
      worst = std::max(worst, std::abs(successive.probs()[i] -
                                       simultaneous.probs()[i]));
    }
    // Order independence: compare against the axis-swapped joint.
    for (std::size_t ia = 0; ia < a.outcome_count(); ++ia) {
      for (std::size_t ib = 0; ib < b.outcome_count(); ++ib) {
        worst = std::max(worst, std::abs(successive.prob({ia, ib}) -
                                         reversed.prob({ib, ia})));
      }
    }
  }
  return worst;
}

double check_duality(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d = rng.uniform_int(2, 4);
    const Hamiltonian h(random_hermitian(rng, d));
    const DensityOperator rho = random_density(rng, d);
    const Observable a = random_nondegenerate_observable(rng, d);
    const double time = rng.uniform(0.0, 5.0);
    for (const auto& line : a.spectrum()) {
      const double heisenberg =
          trace_product(heisenberg_projector(line.projector, h, time),
                        rho.matrix())
              .real();
      const double schroedinger =
          trace_product(line.projector, evolve_state(rho, h, time).matrix())
              .real();
      worst = std::max(worst, std::abs(heisenberg - schroedinger));
    }
  }
  return worst;
}

double check_completion_independence(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Index d = rng.uniform_int(2, 3);
    const Index da = rng.uniform_int(static_cast<int>(d), 4);
    TransducerSpec spec = random_transducer_spec(
        rng, random_nondegenerate_observable(rng, d), da);
    const MeasurementModel base = build_transducer(spec);
    spec.completion_seed = 1 + static_cast<unsigned>(rng.uniform_int(0, 5));
    const MeasurementModel alt = build_transducer(spec);
    const DensityOperator rho = random_density(rng, d);
    worst = std::max(worst, distribution_max_abs_diff(
                                outcome_distribution(base, rho),
                                outcome_distribution(alt, rho)));
    worst = std::max(worst, max_abs_diff(prior_state(base, rho).matrix(),
                                         prior_state(alt, rho).matrix()));
    const OutcomeDistribution dist = outcome_distribution(base, rho);
    for (const auto& e : dist.entries()) {
      if (e.prob <= 1e-9) continue;
      worst = std::max(worst,
                       max_abs_diff(posterior_state(base, rho, e.label).matrix(),
                                    posterior_state(alt, rho, e.label).matrix()));
    }
  }
  return worst;
}

double check_apparatus_hamiltonian_invariance(Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const LocalSetup s = random_local_setup(rng);
    const Hamiltonian h_app(
        random_hermitian(rng, s.model().apparatus_dim()));
    const LocalSetup with_h_app(s.h1(), s.h2(), s.model(), s.a_obs(),
                                s.b_obs(), s.t1(), s.dt(), s.t2(), s.rho0(),
                                h_app);
    worst = std::max(worst, joint_max_abs_diff(joint_simulated(s),
                                               joint_simulated(with_h_app)));
  }
  return worst;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  struct Property {
    const char* name;
    double tolerance;
    double (*check)(Rng&, int);
  };
  static const Property properties[] = {
      {"theorem-equivalence", 1e-9, check_theorem_equivalence},
      {"a-marginal-consistency", 1e-9, check_a_marginal_consistency},
      {"no-signaling", 1e-9, check_no_signaling},
      {"affinity", 1e-10, check_affinity},
      {"instrument-choi-psd", 1e-8, check_instrument_choi},
      {"instrument-normalization", 1e-9, check_instrument_normalization},
      {"instrument-equivalence", 1e-9, check_instrument_equivalence},
      {"quantum-bayes", 1e-9, check_quantum_bayes},
      {"statistical-formula", 1e-10, check_statistical_formula},
      {"projection-recovery", 1e-10, check_projection_recovery},
      {"photon-counting", 1e-10, check_photon_counting},
      {"nonselective-decomposition", 1e-9, check_nonselective_decomposition},
      {"marginal-reconstruction", 1e-8, check_marginal_reconstruction},
      {"bayes-reweighting", 1e-12, check_bayes_reweighting},
      {"rules-agreement", 1e-10, check_rules_agreement},
      {"heisenberg-duality", 1e-10, check_duality},
      {"completion-independence", 1e-10, check_completion_independence},
      {"apparatus-hamiltonian-invariance", 1e-9,
       check_apparatus_hamiltonian_invariance},
  };

  std::vector<CheckResult> results;
  std::uint64_t stream = options.seed;
  for (const auto& property : properties) {
    Rng rng(stream);
    stream += 0x9e3779b97f4a7c15ULL;
    const double tol =
        options.tolerance ? *options.tolerance : property.tolerance;
    const double violation = property.check(rng, options.trials);
    results.push_back({property.name, options.trials, violation, tol,
                       violation <= tol});
  }
  return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace qmeas
