#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::test;

namespace {

// Von Neumann pointer apparatus for pauli_z: |xi> = |0>, computational
// pointers, posts equal to the measured eigenstates.
MeasurementModel vn_pauli_z() {
  const Observable z(presets::pauli_z());
  std::vector<StateVector> pointers = {presets::ket(0, 2), presets::ket(1, 2)};
  std::vector<StateVector> posts;
  for (const auto& line : z.spectrum()) {
    posts.emplace_back(Vector(projector_ray(line.projector)));
  }
  return build_transducer(TransducerSpec{z, presets::ket(0, 2), pointers, posts});
}

// Photon counter on a dim-levels truncated mode: U |n> ⊗ xi = |0> ⊗ xi_n.
MeasurementModel photon_counter(Index dim) {
  std::vector<StateVector> pointers;
  std::vector<StateVector> posts;
  for (Index n = 0; n < dim; ++n) {
    pointers.push_back(presets::ket(n, dim));
    posts.push_back(presets::ket(0, dim));
  }
  return build_transducer(TransducerSpec{Observable(presets::number_operator(dim)),
                                         presets::ket(0, dim), pointers, posts});
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace

TEST_CASE("build_transducer maps the physical subspace as specified") {
  Rng rng(139);
  const Index d = 3, da = 4;
  const Observable measured = random_nondegenerate_observable(rng, d);
  const TransducerSpec spec = random_transducer_spec(rng, measured, da);
  const MeasurementModel model = build_transducer(spec);

  CHECK(is_unitary(model.unitary(), 1e-10));
  for (Index n = 0; n < d; ++n) {
    const Vector phi_n = projector_ray(measured.spectrum()[n].projector);
    const Vector in = kron_vec(spec.xi.amplitudes(), phi_n);
    const Vector expected = kron_vec(spec.pointer_states[n].amplitudes(),
                                     spec.post_states[n].amplitudes());
    CHECK((model.unitary() * in - expected).norm() < 1e-10);
  }

  // Linearity on superpositions of the measured eigenstates.
  Vector super = Vector::Zero(d);
  std::vector<Cx> coeff;
  for (Index n = 0; n < d; ++n) coeff.push_back(rng.complex_normal());
  Vector expected_out = Vector::Zero(da * d);
  for (Index n = 0; n < d; ++n) {
    const Vector phi_n = projector_ray(measured.spectrum()[n].projector);
    super += coeff[n] * phi_n;
    expected_out += coeff[n] * kron_vec(spec.pointer_states[n].amplitudes(),
                                        spec.post_states[n].amplitudes());
  }
  const double norm = super.norm();
  super /= norm;
  expected_out /= norm;
  CHECK((model.unitary() * kron_vec(spec.xi.amplitudes(), super) -
         expected_out)
            .norm() < 1e-10);
}

TEST_CASE("build_transducer rejects bad pointer families") {
  const Observable z(presets::pauli_z());
  std::vector<StateVector> overlapping = {presets::ket(0, 2), presets::plus()};
  std::vector<StateVector> posts = {presets::ket(0, 2), presets::ket(1, 2)};
  CHECK_THROWS_AS(build_transducer(TransducerSpec{z, presets::ket(0, 2),
                                                  overlapping, posts}),
                  UnitarityError);
}

TEST_CASE("build_transducer rejects degenerate measured observables") {
  const Observable degenerate(identity(2));
  std::vector<StateVector> pointers = {presets::ket(0, 2)};
  std::vector<StateVector> posts = {presets::ket(0, 2)};
  CHECK_THROWS_AS(build_transducer(TransducerSpec{degenerate, presets::ket(0, 2),
                                                  pointers, posts}),
                  UnsupportedError);
}

TEST_CASE("measurement model validates the interaction unitary") {
  CHECK_THROWS_AS(MeasurementModel(2, 2, DensityOperator(0.5 * identity(2)),
                                   2.0 * identity(4),
                                   Observable(presets::pauli_z())),
                  UnitarityError);
}

TEST_CASE("outcome_distribution of the von Neumann pauli_z model") {
  const MeasurementModel model = vn_pauli_z();
  const OutcomeDistribution dist =
      outcome_distribution(model, pure_state(presets::plus()));
  CHECK(dist.prob_of(-1.0) == doctest::Approx(0.5));
  CHECK(dist.prob_of(+1.0) == doctest::Approx(0.5));
}

TEST_CASE("statistical formula holds for arbitrary post states") {
  Rng rng(149);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = rng.uniform_int(2, 3);
    const Index da = rng.uniform_int(static_cast<int>(d), 4);
    const Observable measured = random_nondegenerate_observable(rng, d);
    const MeasurementModel model =
        build_transducer(random_transducer_spec(rng, measured, da));
    const DensityOperator rho = random_density(rng, d);
    CHECK(distribution_max_abs_diff(outcome_distribution(model, rho),
                                    born_distribution(measured, rho)) < 1e-10);
  }
}

TEST_CASE("photon counter statistics and posterior reset") {
  const MeasurementModel model = photon_counter(4);
  Vector amps = Vector::Zero(4);
  amps(0) = amps(1) = amps(2) = 1.0 / std::sqrt(3.0);
  const DensityOperator rho = pure_state(StateVector(amps));

  const OutcomeDistribution dist = outcome_distribution(model, rho);
  CHECK(dist.prob_of(0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(dist.prob_of(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(dist.prob_of(2.0) == doctest::Approx(1.0 / 3.0));
  CHECK(dist.prob_of(3.0) == doctest::Approx(0.0));

  const Matrix vacuum = ket_state(0, 4).matrix();
  for (double n : {0.0, 1.0, 2.0}) {
    CHECK(max_abs_diff(posterior_state(model, rho, n).matrix(), vacuum) <
          1e-12);
  }
  CHECK_THROWS_AS(posterior_state(model, rho, 3.0), ConditioningError);

  // Nonselective output is the vacuum regardless of the input.
  Rng rng(151);
  CHECK(max_abs_diff(prior_state(model, random_density(rng, 4)).matrix(),
                     vacuum) < 1e-12);
}

TEST_CASE("prior_state of an uncoupled model leaves the object alone") {
  Rng rng(157);
  const DensityOperator sigma = random_density(rng, 2);
  const MeasurementModel model(2, 3, sigma, identity(6),
                               Observable(presets::pauli_z()));
  const DensityOperator rho = random_density(rng, 3);
  CHECK(max_abs_diff(prior_state(model, rho).matrix(), rho.matrix()) < 1e-12);
}

TEST_CASE("von Neumann pauli_z model decoheres |+> to the maximal mixture") {
  const MeasurementModel model = vn_pauli_z();
  const DensityOperator plus = pure_state(presets::plus());
  // Explicit partial-trace oracle: after U, the composite is the two-branch
  // entangled state with weights 1/2, so the object marginal is I/2.
  CHECK(max_abs_diff(prior_state(model, plus).matrix(), 0.5 * identity(2)) <
        1e-12);
}

TEST_CASE("posterior_state agrees with the projection postulate (vn case)") {
  const MeasurementModel model = vn_pauli_z();
  const DensityOperator plus = pure_state(presets::plus());
  CHECK(max_abs_diff(posterior_state(model, plus, +1.0).matrix(), diag2(1, 0)) <
        1e-12);
  CHECK(max_abs_diff(posterior_state(model, plus, -1.0).matrix(), diag2(0, 1)) <
        1e-12);

  Rng rng(163);
  const Observable z(presets::pauli_z());
  for (int trial = 0; trial < 5; ++trial) {
    const DensityOperator rho = random_density(rng, 2);
    for (const auto& line : z.spectrum()) {
      CHECK(max_abs_diff(
                posterior_state(model, rho, line.value).matrix(),
                projection_postulate_update(z, line.value, rho).matrix()) <
            1e-10);
    }
  }
}

TEST_CASE("posterior branches recombine affinely under mixtures") {
  Rng rng(167);
  const MeasurementModel model =
      build_transducer(random_transducer_spec(
          rng, random_nondegenerate_observable(rng, 3), 3));
  const DensityOperator rho1 = random_density(rng, 3);
  const DensityOperator rho2 = random_density(rng, 3);
  const double alpha = 0.3;
  const DensityOperator mixed = mix(rho1, rho2, alpha);

  const OutcomeDistribution d1 = outcome_distribution(model, rho1);
  const OutcomeDistribution d2 = outcome_distribution(model, rho2);
  const OutcomeDistribution dm = outcome_distribution(model, mixed);
  for (const auto& e : dm.entries()) {
    if (e.prob <= 1e-9) continue;
    const Matrix lhs = e.prob * posterior_state(model, mixed, e.label).matrix();
    const Matrix rhs =
        alpha * d1.prob_of(e.label) *
            posterior_state(model, rho1, e.label).matrix() +
        (1 - alpha) * d2.prob_of(e.label) *
            posterior_state(model, rho2, e.label).matrix();
    CHECK(max_abs_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("prior_state is the probability mixture of the posteriors") {
  Rng rng(173);
  const MeasurementModel model =
      build_transducer(random_transducer_spec(
          rng, random_nondegenerate_observable(rng, 2), 3));
  const DensityOperator rho = random_density(rng, 2);
  const OutcomeDistribution dist = outcome_distribution(model, rho);
  Matrix mixture = Matrix::Zero(2, 2);
  for (const auto& e : dist.entries()) {
    if (e.prob <= 1e-12) continue;
    mixture += e.prob * posterior_state(model, rho, e.label).matrix();
  }
  CHECK(max_abs_diff(mixture, prior_state(model, rho).matrix()) < 1e-9);
}

TEST_CASE("induced_instrument of the von Neumann pauli_z model") {
  const MeasurementModel model = vn_pauli_z();
  const Instrument inst = induced_instrument(model);
  REQUIRE(inst.branches().size() == 2);
  CHECK(inst.branches()[0].kraus.size() == 1);
  CHECK(inst.branches()[1].kraus.size() == 1);

  // Channel action comparison (Kraus entries are only fixed up to phase).
  Rng rng(179);
  const DensityOperator rho = random_density(rng, 2);
  const Matrix k_minus = inst.branches()[0].kraus[0];
  const Matrix k_plus = inst.branches()[1].kraus[0];
  CHECK(max_abs_diff(k_minus * rho.matrix() * k_minus.adjoint(),
                     diag2(0, 1) * rho.matrix() * diag2(0, 1)) < 1e-12);
  CHECK(max_abs_diff(k_plus * rho.matrix() * k_plus.adjoint(),
                     diag2(1, 0) * rho.matrix() * diag2(1, 0)) < 1e-12);
}

TEST_CASE("induced_instrument kraus count for pure sigma") {
  Rng rng(181);
  const MeasurementModel model = build_transducer(random_transducer_spec(
      rng, random_nondegenerate_observable(rng, 3), 3));
  // Pure sigma and a nondegenerate probe: one Kraus operator per branch.
  const Instrument inst = induced_instrument(model);
  for (const auto& branch : inst.branches()) {
    CHECK(branch.kraus.size() == 1);
  }
}

TEST_CASE("induced_instrument reproduces the model's statistics") {
  Rng rng(191);
  for (int trial = 0; trial < 5; ++trial) {
    const Index d = rng.uniform_int(2, 3);
    const MeasurementModel model = build_transducer(random_transducer_spec(
        rng, random_nondegenerate_observable(rng, d),
        rng.uniform_int(static_cast<int>(d), 4)));
    const Instrument inst = induced_instrument(model);
    const DensityOperator rho = random_density(rng, d);
    const OutcomeDistribution dist = outcome_distribution(model, rho);
    for (const auto& outcome : apply_instrument(inst, rho)) {
      CHECK(std::abs(outcome.probability - dist.prob_of(outcome.label)) <
            1e-9);
      if (outcome.probability > 1e-9) {
        REQUIRE(outcome.post_state.has_value());
        CHECK(max_abs_diff(
                  outcome.post_state->matrix(),
                  posterior_state(model, rho, outcome.label).matrix()) < 1e-9);
      }
    }
  }
}

TEST_CASE("induced_instrument with a mixed apparatus preparation") {
  Rng rng(193);
  // Direct model: mixed sigma, entangling unitary, computational probe.
  const Index da = 2, d = 2;
  const DensityOperator sigma =
      mix(ket_state(0, 2), ket_state(1, 2), 0.25);
  const Matrix u = random_unitary(rng, da * d);
  const Observable probe(presets::pauli_z());
  const MeasurementModel model(da, d, sigma, u, probe);

  const Instrument inst = induced_instrument(model);
  // rank-2 sigma and rank-1 probe projectors: two Kraus operators per branch.
  for (const auto& branch : inst.branches()) {
    CHECK(branch.kraus.size() == 2);
  }
  const DensityOperator rho = random_density(rng, d);
  const OutcomeDistribution dist = outcome_distribution(model, rho);
  for (const auto& outcome : apply_instrument(inst, rho)) {
    CHECK(std::abs(outcome.probability - dist.prob_of(outcome.label)) < 1e-9);
    if (outcome.probability > 1e-9) {
      CHECK(max_abs_diff(outcome.post_state->matrix(),
                         posterior_state(model, rho, outcome.label).matrix()) <
            1e-9);
    }
  }
}

TEST_CASE("posterior distributions follow the classical Bayes update") {
  Rng rng(197);
  const MeasurementModel model = build_transducer(random_transducer_spec(
      rng, random_nondegenerate_observable(rng, 3), 4));
  const DensityOperator rho = random_density(rng, 3);
  const Observable b_obs = random_nondegenerate_observable(rng, 3);
  const JointTable joint = probe_object_joint(model, rho, b_obs);
  const OutcomeDistribution dist = outcome_distribution(model, rho);
  for (const auto& e : dist.entries()) {
    if (e.prob <= 1e-6) continue;
    CHECK(distribution_max_abs_diff(
              bayes_posterior(joint, e.label),
              born_distribution(b_obs, posterior_state(model, rho, e.label))) <
          1e-9);
  }
}

TEST_CASE("completion seed does not change the physical statistics") {
  Rng rng(199);
  TransducerSpec spec = random_transducer_spec(
      rng, random_nondegenerate_observable(rng, 3), 4);
  const MeasurementModel base = build_transducer(spec);
  spec.completion_seed = 5;
  const MeasurementModel shifted = build_transducer(spec);
  CHECK(max_abs_diff(base.unitary(), shifted.unitary()) > 1e-6);

  const DensityOperator rho = random_density(rng, 3);
  CHECK(distribution_max_abs_diff(outcome_distribution(base, rho),
                                  outcome_distribution(shifted, rho)) < 1e-12);
  CHECK(max_abs_diff(prior_state(base, rho).matrix(),
                     prior_state(shifted, rho).matrix()) < 1e-12);
}
