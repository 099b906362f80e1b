import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffsplit.circuit import CNOT, Circuit, H, Phase, Rz, S, T, Tdg, X, random_clifford_t
from cliffsplit.densesim import expectation, simulate, unitary
from cliffsplit.pauli import PauliSum
from cliffsplit.stabilizer import StabilizerError
from cliffsplit.vqe import (ABSORB_RIGHT, BACKENDS, DENSE, FINITE_DIFFERENCE, PARAMETER_SHIFT, SPLIT_LEFT,
                            Ansatz, Evaluator, VqeConfig, VqeError, VqeTrace, absorb_clifford,
                            acceptance_hamiltonian, config_from_json_text, descend, ground_energy,
                            gradient, loss)

from conftest import circuits, clifford_t

Z1 = PauliSum([(1.0, "Z")])


def theta(k=0):
    return Phase.parameter(k)


def ansatz(n, *gates):
    c = Circuit(n, gates)
    return Ansatz(c, len(c.parameters()))


COS = ansatz(1, H(0), Rz(0, theta()), H(0))


# ---- loss

@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("t", [0.0, 0.7, -2.0])
def test_rz_on_zero(backend, t):
    assert loss(ansatz(1, Rz(0, theta())), [t], Z1, backend) == pytest.approx(1.0)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("t", [0.0, 0.7, -2.0])
def test_equator(backend, t):
    assert loss(ansatz(1, H(0), Rz(0, theta())), [t], Z1, backend) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_cosine(backend):
    assert loss(COS, [math.pi / 3], Z1, backend) == pytest.approx(0.5, abs=1e-12)


def test_parameter_count_checked():
    with pytest.raises(VqeError):
        loss(COS, [0.1, 0.2], Z1)
    with pytest.raises(VqeError):
        Ansatz(Circuit(1, (Rz(0, theta(3)),)), 1)
    with pytest.raises(VqeError):
        loss(COS, [0.1], Z1, "quantum")


# ---- gradient

@pytest.mark.parametrize("backend", BACKENDS)
def test_cosine_gradient(backend):
    g = gradient(COS, [math.pi / 3], Z1, backend)
    assert g[0] == pytest.approx(-math.sin(math.pi / 3), abs=1e-9)


def test_constant_loss_gradient_is_zero():
    g = gradient(ansatz(1, Rz(0, theta())), [0.3], Z1)
    assert g[0] == pytest.approx(0.0, abs=1e-12)


def test_shared_and_negated_parameters():
    # theta appears twice, once negated: U = Rz(-t) H Rz(t) H on |0>
    a = Ansatz(Circuit(1, (H(0), Rz(0, theta()), H(0), Rz(0, -theta()), H(0))), 1)
    obs = PauliSum([(1.0, "Z"), (0.4, "X")])
    ev = Evaluator(a, obs)
    t = np.array([0.37])
    fd = ev.gradient(t, FINITE_DIFFERENCE, 1e-5)
    ps = ev.gradient(t, PARAMETER_SHIFT)
    assert ps[0] == pytest.approx(fd[0], abs=1e-6)


@given(clifford_t(min_n=2, max_n=3, max_depth=25), st.integers(0, 2**32 - 1))
def test_parameter_shift_matches_finite_difference(c, seed):
    a, init = Ansatz.from_circuit(c)
    if a.parameter_count == 0:
        return
    obs = PauliSum([(0.7, "Z" * c.n_qubits), (-0.4, "X" + "I" * (c.n_qubits - 1))])
    rng = np.random.default_rng(seed)
    params = init + rng.normal(scale=0.5, size=len(init))
    for backend in BACKENDS:
        ev = Evaluator(a, obs, backend)
        ps = ev.gradient(params, PARAMETER_SHIFT)
        fd = ev.gradient(params, FINITE_DIFFERENCE, 1e-5)
        np.testing.assert_allclose(ps, fd, atol=1e-6)


# ---- backends agree

@given(clifford_t(min_n=2, max_n=4, max_depth=40), st.integers(0, 2**32 - 1))
def test_backends_agree(c, seed):
    a, init = Ansatz.from_circuit(c)
    obs = PauliSum([(0.5, "Z" * c.n_qubits), (0.3, "Y" + "X" * (c.n_qubits - 1))])
    params = init + np.random.default_rng(seed).normal(size=len(init))
    ref = loss(a, params, obs, DENSE)
    assert loss(a, params, obs, SPLIT_LEFT) == pytest.approx(ref, abs=1e-10)
    assert loss(a, params, obs, ABSORB_RIGHT) == pytest.approx(ref, abs=1e-10)


def test_from_circuit_reproduces_the_circuit():
    c = random_clifford_t(3, 30, 0.3, 8)
    a, init = Ansatz.from_circuit(c)
    assert a.parameter_count == sum(g.kind == "T" for g in c.gates)
    state = simulate(a.template, init)
    ref = simulate(c)
    assert abs(abs(np.vdot(state, ref)) - 1) < 1e-10
    assert abs(abs(np.vdot(simulate(a.bind(init)), ref)) - 1) < 1e-10


# ---- descend

def test_cosine_descent():
    tr = descend(COS, Z1, VqeConfig(step_size=0.4, max_iters=200, tol=1e-14), [1.0])
    assert tr.final_loss == pytest.approx(-1.0, abs=1e-6)
    assert len(tr.losses) <= 201
    assert tr.final_loss <= tr.losses[0]


@pytest.mark.parametrize("start", [0.0, math.pi])
def test_stationary_start_converges_immediately(start):
    tr = descend(COS, Z1, VqeConfig(step_size=0.4, max_iters=50), [start])
    assert tr.converged and len(tr.losses) == 2


def test_traces_agree_across_backends():
    c = random_clifford_t(2, 40, 0.2, 11)
    a, init = Ansatz.from_circuit(c)
    cfg = VqeConfig(step_size=0.2, max_iters=60)
    obs = acceptance_hamiltonian()
    d = descend(a, obs, cfg, init, DENSE)
    s = descend(a, obs, cfg, init, SPLIT_LEFT)
    assert len(d.losses) == len(s.losses)
    np.testing.assert_allclose(d.losses, s.losses, atol=1e-10)


def test_trace_exports():
    tr = descend(COS, Z1, VqeConfig(step_size=0.4, max_iters=3, tol=0), [1.0])
    lines = tr.to_csv().strip().split("\n")
    assert lines[0] == "iter,loss,theta0"
    assert len(lines) == 5
    data = tr.to_json()
    assert len(data["losses"]) == 4 and data["converged"] is False


# ---- config

def test_config_validation():
    for bad in ({"step_size": 0}, {"max_iters": 0}, {"tol": -1}, {"gradient": "adam"}, {"h": 0}):
        with pytest.raises(VqeError):
            VqeConfig(**bad)
    with pytest.raises(VqeError):
        config_from_json_text('{"learning_rate": 0.1}')
    with pytest.raises(VqeError):
        config_from_json_text("[1, 2]")
    with pytest.raises(VqeError):
        config_from_json_text("{not json")
    cfg = config_from_json_text('{"step_size": 0.3, "gradient": "finite_difference"}')
    assert cfg.step_size == 0.3 and VqeConfig.from_json(cfg.to_json()) == cfg


# ---- absorption

def test_absorb_examples():
    assert absorb_clifford(Z1, Circuit(1, (H(0),))).to_dict() == {"X": 1.0}
    assert absorb_clifford(PauliSum([(1.0, "XI")]), Circuit(2, (CNOT(0, 1),))).to_dict() == {"XX": 1.0}
    # S^dag X S = -Y: the sign lands on the coefficient
    assert absorb_clifford(PauliSum([(2.0, "X")]), Circuit(1, (S(0),))).to_dict() == {"Y": -2.0}


def test_absorb_rejects_non_clifford():
    with pytest.raises(StabilizerError):
        absorb_clifford(Z1, Circuit(1, (T(0),)))


@given(circuits(max_n=4, clifford=True), st.data())
def test_absorb_matches_dense_conjugation(c, data):
    n = c.n_qubits
    terms = data.draw(st.lists(st.tuples(st.floats(-2, 2), st.text("IXYZ", min_size=n, max_size=n)),
                               min_size=1, max_size=4))
    obs = PauliSum(terms, n=n)
    u = unitary(c)
    np.testing.assert_allclose(absorb_clifford(obs, c).to_matrix(), u.conj().T @ obs.to_matrix() @ u,
                               atol=1e-10)


def test_ground_energy():
    assert ground_energy(acceptance_hamiltonian()) == pytest.approx(-math.sqrt(0.5), abs=1e-12)
