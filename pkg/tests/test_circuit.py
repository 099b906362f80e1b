import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffsplit.circuit import (CNOT, CZ, Circuit, CircuitError, Gate, H, Phase, Rz, S, Sdg, T, Tdg, X,
                                adjoint, depth, parse_qasm, peephole, random_clifford_t, to_qasm)
from cliffsplit.densesim import unitary, unitary_overlap

from conftest import circuits


# ---- parse_qasm

def test_parse_bell():
    assert parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];") == Circuit(2, (H(0), CNOT(0, 1)))


def test_parse_empty_body():
    assert parse_qasm("qreg q[1];") == Circuit(1, ())


def test_parse_rz_snaps_to_quarter_pi():
    c = parse_qasm("qreg q[1]; rz(0.7853981633974483) q[0];")
    assert c.gates == (Rz(0, Phase(1, 4)),)


def test_parse_ignores_header_measure_barrier_and_comments():
    text = """OPENQASM 2.0;
    include "qelib1.inc";
    qreg q[2]; creg c[2];
    // a comment
    h q[0]; barrier q[0],q[1];
    rz(pi/2) q[1];
    measure q[0] -> c[0];
    """
    assert parse_qasm(text) == Circuit(2, (H(0), Rz(1, Phase(1, 2))))


def test_parse_far_angle_uses_bounded_denominator():
    c = parse_qasm("qreg q[1]; rz(0.1) q[0];")
    ph = c.gates[0].phase
    assert ph.den <= 2**20
    assert abs(ph.radians() - 0.1) < 1e-6


@pytest.mark.parametrize("text", [
    "qreg q[1]; u3(0,0,0) q[0];",
    "qreg q[1]; h q[1];",
    "h q[0];",
    "qreg q[1]; rz q[0];",
    "qreg q[2]; h r[0];",
])
def test_parse_errors(text):
    with pytest.raises(CircuitError):
        parse_qasm(text)


@given(circuits(max_n=3))
def test_qasm_round_trip_preserves_unitary(c):
    back = parse_qasm(to_qasm(c))
    assert back.n_qubits == c.n_qubits
    assert unitary_overlap(unitary(c), unitary(back)) > 1 - 1e-9


# ---- adjoint

def test_adjoint_examples():
    assert adjoint(Circuit(1, (H(0),))) == Circuit(1, (H(0),))
    assert adjoint(Circuit(2, (S(0), CNOT(0, 1)))) == Circuit(2, (CNOT(0, 1), Sdg(0)))
    assert adjoint(Circuit(1, (T(0), Rz(0, Phase(3, 8))))) == Circuit(1, (Rz(0, Phase(-3, 8)), Tdg(0)))


@given(circuits())
def test_adjoint_is_an_involution(c):
    assert adjoint(adjoint(c)) == c


@given(circuits(max_n=4))
def test_adjoint_unitary_is_dagger(c):
    np.testing.assert_allclose(unitary(adjoint(c)), unitary(c).conj().T, atol=1e-10)


# ---- depth

def test_depth_examples():
    assert depth(Circuit(1, ())) == 0
    assert depth(Circuit(2, (H(0), H(1)))) == 1
    assert depth(Circuit(2, (H(0), CNOT(0, 1), H(1)))) == 3


@given(circuits(), st.data())
def test_depth_monotone_under_append(c, data):
    q = data.draw(st.integers(0, c.n_qubits - 1))
    d = depth(c)
    assert 0 <= d <= len(c)
    assert depth(c.appended(H(q))) >= d


# ---- random_clifford_t

def test_random_zero_depth_is_empty():
    assert random_clifford_t(2, 0, 0.2, 7) == Circuit(2, ())


def test_random_hits_target_depth():
    assert depth(random_clifford_t(3, 40, 0.2, 1)) == 40


def test_random_is_deterministic_per_seed():
    assert random_clifford_t(4, 30, 0.2, 5) == random_clifford_t(4, 30, 0.2, 5)
    assert random_clifford_t(4, 30, 0.2, 5) != random_clifford_t(4, 30, 0.2, 6)


def test_random_t_fraction_concentrates():
    gates = [g for s in range(1000) for g in random_clifford_t(3, 10, 0.2, s).gates]
    frac = sum(g.kind == "T" for g in gates) / len(gates)
    assert 0.17 <= frac <= 0.23


def test_random_rejects_bad_arguments():
    with pytest.raises(CircuitError):
        random_clifford_t(0, 5)
    with pytest.raises(CircuitError):
        random_clifford_t(2, 5, 1.5)


# ---- Phase and Gate

@given(st.integers(-50, 50), st.integers(1, 16))
def test_phase_normalization_idempotent_and_angle_preserving(num, den):
    p = Phase(num, den)
    assert Phase(p.num, p.den) == p
    assert -2 < p.value <= 2
    assert math.gcd(abs(p.num), p.den) == 1
    assert (Fraction(num, den) - p.value) % 2 == 0


def test_phase_clifford_test_is_exact():
    assert Phase(1, 2).is_clifford() and Phase(3).is_clifford()
    assert not Phase(1, 4).is_clifford()
    assert not Phase.parameter(0).is_clifford()


def test_parametric_phases_do_not_add():
    with pytest.raises(CircuitError):
        Phase.parameter(0) + Phase.parameter(1)


def test_gate_validation():
    with pytest.raises(CircuitError):
        Gate("CNOT", (1, 1))
    with pytest.raises(CircuitError):
        Gate("H", (0, 1))
    with pytest.raises(CircuitError):
        Gate("Toffoli", (0,))
    with pytest.raises(CircuitError):
        Circuit(2, (H(2),))


def test_clifford_classification():
    assert all(g.is_clifford() for g in (H(0), X(0), S(0), Sdg(0), CNOT(0, 1), CZ(0, 1), Rz(0, Phase(1, 2))))
    assert not T(0).is_clifford() and not Tdg(0).is_clifford() and not Rz(0, Phase(1, 8)).is_clifford()


@given(circuits())
def test_json_round_trip(c):
    assert Circuit.loads(c.dumps()) == c


# ---- peephole

def test_peephole_cancels_and_merges():
    # CZ is symmetric, so CZ(0,1) CZ(1,0) cancels; named T is not merged with Rz
    c = Circuit(2, (H(0), H(0), CZ(0, 1), CZ(1, 0), T(1), Rz(1, Phase(-1, 4)), X(1)))
    assert peephole(c) == Circuit(2, (T(1), Rz(1, Phase(-1, 4)), X(1)))
    c = Circuit(1, (Rz(0, Phase(1, 4)), Rz(0, Phase(-1, 4)), X(0)))
    assert peephole(c) == Circuit(1, (X(0),))


@given(circuits(max_n=3))
def test_peephole_preserves_unitary_and_never_grows(c):
    p = peephole(c)
    assert len(p) <= len(c)
    assert unitary_overlap(unitary(c), unitary(p)) > 1 - 1e-9
