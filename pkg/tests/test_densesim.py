import functools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffsplit.circuit import CNOT, Circuit, H, Phase, Rz, T, adjoint, random_clifford_t
from cliffsplit.densesim import (FusedCircuit, apply_gate, composite_simulate, distribution, distribution_csv,
                                 evolve, expectation, overlap, simulate, state_from_json, state_to_json,
                                 unitary, zero_state)
from cliffsplit.pauli import PauliSum
from cliffsplit.stabilizer import run_tableau, tableau_statevector

from conftest import circuits, clifford_t, random_state

S2 = 1 / np.sqrt(2)
_1Q = {
    "H": np.array([[1, 1], [1, -1]]) * S2,
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
    "S": np.diag([1, 1j]),
    "Sdg": np.diag([1, -1j]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
    "Tdg": np.diag([1, np.exp(-1j * np.pi / 4)]),
}


def kron_oracle(c):
    """Full matrix built from Kronecker products and explicit controlled gates."""
    n = c.n_qubits
    dim = 1 << n
    u = np.eye(dim, dtype=complex)
    for g in c.gates:
        if len(g.qubits) == 1:
            m = _1Q[g.kind] if g.kind != "Rz" else np.diag([np.exp(-0.5j * g.phase.radians()),
                                                              np.exp(0.5j * g.phase.radians())])
            ops = [np.eye(2)] * n
            ops[g.qubits[0]] = m
            full = functools.reduce(np.kron, ops)
        else:
            a, b = g.qubits
            full = np.zeros((dim, dim), dtype=complex)
            for k in range(dim):
                ba, bb = (k >> (n - 1 - a)) & 1, (k >> (n - 1 - b)) & 1
                if g.kind == "CNOT":
                    full[k ^ (ba << (n - 1 - b)), k] = 1
                else:
                    full[k, k] = -1 if ba and bb else 1
        u = full @ u
    return u


def test_zero_state():
    np.testing.assert_array_equal(zero_state(1), [1, 0])
    np.testing.assert_array_equal(zero_state(2), [1, 0, 0, 0])
    with pytest.raises(ValueError):
        zero_state(0)


def test_evolve_examples():
    np.testing.assert_allclose(simulate(Circuit(1, (H(0),))), [S2, S2], atol=1e-12)
    np.testing.assert_allclose(simulate(Circuit(2, (H(0), CNOT(0, 1)))), [S2, 0, 0, S2], atol=1e-12)


def test_evolve_dimension_mismatch():
    with pytest.raises(ValueError):
        evolve(zero_state(2), Circuit(3, ()))


@given(circuits(max_n=5, max_gates=20))
def test_evolve_matches_kron_oracle(c):
    np.testing.assert_allclose(simulate(c), kron_oracle(c)[:, 0], atol=1e-10)


@given(circuits(max_n=4))
def test_unitary_matches_kron_oracle_and_is_unitary(c):
    u = unitary(c)
    np.testing.assert_allclose(u, kron_oracle(c), atol=1e-10)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(1 << c.n_qubits), atol=1e-10)


def test_unitary_examples_and_cap():
    np.testing.assert_allclose(unitary(Circuit(2, ())), np.eye(4))
    np.testing.assert_allclose(unitary(Circuit(1, (H(0),))), _1Q["H"], atol=1e-12)
    with pytest.raises(ValueError):
        unitary(Circuit(7, ()))


@given(circuits(max_n=5), st.integers(0, 2**32 - 1))
def test_norm_and_reversibility(c, seed):
    s = random_state(c.n_qubits, np.random.default_rng(seed))
    out = evolve(s, c)
    assert abs(np.linalg.norm(out) - 1) < 1e-10
    np.testing.assert_allclose(evolve(out, adjoint(c)), s, atol=1e-9)


def test_evolve_does_not_touch_input():
    s = zero_state(1)
    evolve(s, Circuit(1, (H(0),)))
    np.testing.assert_array_equal(s, [1, 0])


def test_apply_gate_on_batched_states():
    batch = np.eye(4, dtype=complex)
    apply_gate(batch, CNOT(0, 1), 2)
    np.testing.assert_array_equal(batch, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_expectation_examples():
    assert expectation(zero_state(1), PauliSum([(1.0, "Z")])) == pytest.approx(1)
    assert expectation(np.array([S2, S2]), PauliSum([(1.0, "Z")])) == pytest.approx(0, abs=1e-12)
    bell = np.array([S2, 0, 0, S2])
    assert expectation(bell, PauliSum([(1.0, "XX"), (1.0, "ZZ")])) == pytest.approx(2)
    with pytest.raises(ValueError):
        expectation(zero_state(2), PauliSum([(1.0, "Z")]))


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.floats(-2, 2), st.text("IXYZ", min_size=n, max_size=n)), min_size=1, max_size=4),
    st.lists(st.tuples(st.floats(-2, 2), st.text("IXYZ", min_size=n, max_size=n)), min_size=1, max_size=4),
    st.integers(0, 2**32 - 1))))
def test_expectation_linear(case):
    n, ta, tb, seed = case
    s = random_state(n, np.random.default_rng(seed))
    a, b = PauliSum(ta, n=n), PauliSum(tb, n=n)
    assert expectation(s, a + b) == pytest.approx(expectation(s, a) + expectation(s, b), abs=1e-10)
    assert expectation(s, a.scaled(3.0)) == pytest.approx(3 * expectation(s, a), abs=1e-10)
    zero_term = PauliSum(ta + [(0.0, "X" * n)], n=n)
    assert expectation(s, zero_term) == pytest.approx(expectation(s, a), abs=1e-12)
    np.testing.assert_allclose(expectation(s, a), np.vdot(s, a.to_matrix() @ s).real, atol=1e-10)


def test_distribution_examples():
    np.testing.assert_allclose(distribution(zero_state(1)), [1, 0])
    np.testing.assert_allclose(distribution(np.array([S2, S2])), [0.5, 0.5])
    np.testing.assert_allclose(distribution(np.array([S2, 0, 0, S2])), [0.5, 0, 0, 0.5])
    assert distribution_csv(np.array([0.5, 0.5])) == "index,probability\n0,0.5\n1,0.5\n"


def test_state_json_round_trip():
    s = simulate(random_clifford_t(3, 10, 0.3, 2))
    np.testing.assert_array_equal(state_from_json(state_to_json(s)), s)


# ---- composite

def test_composite_on_clifford_is_the_tableau_state():
    c = random_clifford_t(4, 30, 0.0, 9)
    np.testing.assert_allclose(composite_simulate(c), tableau_statevector(run_tableau(c)), atol=1e-12)


def test_composite_single_t():
    c = Circuit(1, (T(0),))
    assert overlap(composite_simulate(c), simulate(c)) > 1 - 1e-12


@given(clifford_t(max_n=6, max_depth=40))
def test_composite_matches_dense(c):
    assert overlap(composite_simulate(c), simulate(c)) > 1 - 1e-9


# ---- fused programs

@given(circuits(max_n=4, max_gates=25), st.integers(0, 2**32 - 1))
def test_fused_circuit_matches_gatewise(c, seed):
    gates = list(c.gates)
    # make every other Rz parametric
    k = 0
    for i, g in enumerate(gates):
        if g.kind == "Rz" and i % 2 == 0:
            gates[i] = Rz(g.qubits[0], Phase.parameter(k, g.phase.value, coeff=1 - 2 * (k % 2)))
            k += 1
    c = Circuit(c.n_qubits, tuple(gates))
    params = np.random.default_rng(seed).uniform(-np.pi, np.pi, k)
    s = random_state(c.n_qubits, np.random.default_rng(seed + 1))
    np.testing.assert_allclose(FusedCircuit(c).evolve(s, params), evolve(s, c, params), atol=1e-10)
