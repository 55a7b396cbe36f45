"""Smoke tests for the qmeas Python module."""

import json
import math

import numpy as np
import pytest

import qmeas


def plus_state():
    return qmeas.pure_state(qmeas.plus_state())


def vn_pauli_z_model():
    z = qmeas.Observable(np.diag([1.0, -1.0]).astype(complex))
    pointers = [qmeas.ket(0, 2), qmeas.ket(1, 2)]
    posts = [qmeas.ket(1, 2), qmeas.ket(0, 2)]  # ascending outcomes: -1 first
    spec = qmeas.TransducerSpec(z, qmeas.ket(0, 2), pointers, posts)
    return qmeas.build_transducer(spec)


def test_born_rule_on_plus():
    z = qmeas.Observable(np.diag([1.0, -1.0]).astype(complex))
    dist = qmeas.born_distribution(z, plus_state())
    assert dist.labels == [-1.0, 1.0]
    assert dist.probs == pytest.approx([0.5, 0.5])


def test_tensor_and_partial_trace_roundtrip():
    rng = qmeas.Rng(3)
    rho1 = qmeas.random_density(rng, 2)
    rho2 = qmeas.random_density(rng, 3)
    composite = qmeas.tensor_product(rho1.matrix, rho2.matrix)
    back = qmeas.partial_trace(composite, 2, 3, qmeas.Factor.second)
    assert np.abs(back - rho1.matrix).max() < 1e-12


def test_model_reproduces_projection_postulate():
    model = vn_pauli_z_model()
    rho = plus_state()
    dist = qmeas.outcome_distribution(model, rho)
    assert dist.probs == pytest.approx([0.5, 0.5])
    post = qmeas.posterior_state(model, rho, 1.0)
    assert np.abs(post.matrix - np.diag([1.0, 0.0])).max() < 1e-10


def test_photon_counting_resets_to_vacuum():
    number = qmeas.Observable(qmeas.number_operator(4))
    pointers = [qmeas.ket(n, 4) for n in range(4)]
    posts = [qmeas.ket(0, 4) for _ in range(4)]
    model = qmeas.build_transducer(
        qmeas.TransducerSpec(number, qmeas.ket(0, 4), pointers, posts)
    )
    amps = np.array([1, 1, 1, 0], dtype=complex) / math.sqrt(3)
    rho = qmeas.pure_state(qmeas.StateVector(amps))
    dist = qmeas.outcome_distribution(model, rho)
    assert dist.probs == pytest.approx([1 / 3, 1 / 3, 1 / 3, 0.0], abs=1e-12)
    vacuum = np.zeros((4, 4), dtype=complex)
    vacuum[0, 0] = 1.0
    for outcome in (0.0, 1.0, 2.0):
        post = qmeas.posterior_state(model, rho, outcome)
        assert np.abs(post.matrix - vacuum).max() < 1e-10


def test_local_theorem_equivalence_random_setup():
    rng = qmeas.Rng(11)
    setup = qmeas.random_local_setup(rng)
    delta = qmeas.joint_max_abs_diff(
        qmeas.joint_simulated(setup), qmeas.joint_formula(setup)
    )
    assert delta < 1e-9


def test_instrument_is_normalized_and_equivalent():
    model = vn_pauli_z_model()
    inst = qmeas.induced_instrument(model)
    total = sum(
        k.conj().T @ k for branch in inst.branches for k in branch.kraus
    )
    assert np.abs(total - np.eye(2)).max() < 1e-9
    outcomes = qmeas.apply_instrument(inst, plus_state())
    dist = qmeas.outcome_distribution(model, plus_state())
    for outcome, p in zip(outcomes, dist.probs):
        assert outcome.probability == pytest.approx(p, abs=1e-12)


def test_bayes_posterior_matches_posterior_state():
    rng = qmeas.Rng(5)
    measured = qmeas.random_nondegenerate_observable(rng, 3)
    model = qmeas.build_transducer(
        qmeas.random_transducer_spec(rng, measured, 3)
    )
    rho = qmeas.random_density(rng, 3)
    b_obs = qmeas.random_nondegenerate_observable(rng, 3)
    joint = qmeas.probe_object_joint(model, rho, b_obs)
    dist = qmeas.outcome_distribution(model, rho)
    for label, p in zip(dist.labels, dist.probs):
        if p < 1e-6:
            continue
        classical = qmeas.bayes_posterior(joint, label)
        quantum = qmeas.born_distribution(
            b_obs, qmeas.posterior_state(model, rho, label)
        )
        assert classical.probs == pytest.approx(quantum.probs, abs=1e-9)


def test_classical_bayes_table():
    joint = qmeas.JointTable([0.0, 1.0], [0.0, 1.0], [[0.1, 0.2], [0.3, 0.4]])
    assert qmeas.bayes_prior(joint).probs == pytest.approx([0.3, 0.7])
    posterior = qmeas.bayes_posterior(joint, 1.0)
    assert posterior.probs == pytest.approx([1 / 3, 2 / 3])


def test_scenarios_run_from_python():
    names = qmeas.builtin_scenario_names()
    assert len(names) == 5
    result = json.loads(qmeas.run_builtin_scenario("qubit-vn"))
    assert result["violations"] == []
    assert result["distributions"][0]["probs"] == pytest.approx([0.5, 0.5])


def test_verification_suite_passes():
    results = qmeas.run_verification(seed=42, trials=3)
    assert all(r.pass_ for r in results)


def test_errors_surface_as_exceptions():
    with pytest.raises(qmeas.QmeasError):
        qmeas.DensityOperator(np.diag([1.1, 0.0]).astype(complex))
    with pytest.raises(qmeas.QmeasError):
        qmeas.partial_trace(np.eye(6, dtype=complex), 4, 2, qmeas.Factor.first)
