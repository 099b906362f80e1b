import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffsplit.circuit import CZ, Circuit, H, T, depth, random_clifford_t
from cliffsplit.densesim import distribution, overlap, simulate
from cliffsplit.pauli import PauliString
from cliffsplit.projector import (ProjectorError, ancilla_distribution, build_projector, canonical_threshold,
                                  distribution_via_projector, postselect_ancillas, projector_depth_bounds,
                                  run_projector, sign_string, threshold_report_csv)
from cliffsplit.stabilizer import conjugate_paulis, generators, project, run_tableau, stabilizer_statevector

from conftest import random_state

P = PauliString.from_str
EXAMPLE = [P("+ZZY"), P("+ZXZ"), P("+YIX")]


def random_generators(n, seed):
    return generators(run_tableau(random_clifford_t(n, 20, 0.0, seed)))


def test_single_z_projector():
    pc = build_projector([P("+Z")], 1)
    assert pc.circuit == Circuit(2, (H(1), CZ(1, 0), H(1)))
    psi = random_state(1, np.random.default_rng(0))
    post, p = postselect_ancillas(run_projector(pc, psi), 1, [0])
    expect = project(psi, [P("+Z")])
    assert overlap(post, expect) > 1 - 1e-12
    assert p == pytest.approx(np.vdot(expect, expect).real)


def test_example_instance_counts():
    pc = build_projector(EXAMPLE, 3)
    assert pc.controlled_ops == 8
    assert len(pc.ancilla_indices) == 3 and pc.circuit.n_qubits == 6
    lo, hi = projector_depth_bounds(3)
    assert lo <= pc.logical_depth() <= hi
    assert depth(pc.logical_circuit()) + 1 <= 12


def test_identity_generator_rejected():
    with pytest.raises(ProjectorError):
        build_projector([P("+III")], 3)
    with pytest.raises(ProjectorError):
        build_projector([P("+ZZ")], 3)
    with pytest.raises(ProjectorError):
        build_projector([P("+iZ")], 1)


def test_depth_bounds():
    assert projector_depth_bounds(1) == (3, 4)
    assert projector_depth_bounds(3) == (3, 12)
    with pytest.raises(ProjectorError):
        projector_depth_bounds(0)


def test_example_postselection_gives_the_stabilizer_state():
    pc = build_projector(EXAMPLE, 3)
    seed = random_state(3, np.random.default_rng(5))
    post, p = postselect_ancillas(run_projector(pc, seed), 3, [0, 0, 0])
    assert p > 0
    assert overlap(post, stabilizer_statevector(EXAMPLE)) > 1 - 1e-9


def test_zero_probability_outcome_raises():
    pc = build_projector([P("+Z")], 1)
    with pytest.raises(ProjectorError):
        postselect_ancillas(run_projector(pc, np.array([1, 0], complex)), 1, [1])
    with pytest.raises(ProjectorError):
        postselect_ancillas(run_projector(pc, np.array([1, 0], complex)), 1, [0, 0])


def test_plus_seed_on_z():
    pc = build_projector([P("+Z")], 1)
    post, p = postselect_ancillas(run_projector(pc, np.array([1, 1]) / np.sqrt(2)), 1, [0])
    assert p == pytest.approx(0.5)
    assert overlap(post, np.array([1, 0])) > 1 - 1e-12


def test_negative_sign_uses_ancilla_z():
    pc = build_projector([P("-Z")], 1)
    assert any(g.kind == "Z" and g.qubits == (1,) for g in pc.circuit.gates)
    post, _ = postselect_ancillas(run_projector(pc, np.array([1, 1]) / np.sqrt(2)), 1, [0])
    assert overlap(post, np.array([0, 1])) > 1 - 1e-12


@given(st.integers(1, 4), st.integers(0, 10**6))
def test_random_generator_sets(n, seed):
    gens = random_generators(n, seed)
    pc = build_projector(gens, n)
    lo, hi = projector_depth_bounds(n)
    assert lo <= pc.logical_depth() <= hi
    psi = random_state(n, np.random.default_rng(seed))
    out = run_projector(pc, psi)
    probs = ancilla_distribution(out, n)
    assert probs.sum() == pytest.approx(1)
    post, _ = postselect_ancillas(out, n, [0] * n)
    assert overlap(post, stabilizer_statevector(gens)) > 1 - 1e-9


@given(st.integers(1, 3), st.integers(0, 10**6))
def test_outcome_probabilities_are_subspace_weights(n, seed):
    gens = random_generators(n, seed)
    psi = random_state(n, np.random.default_rng(seed + 1))
    probs = ancilla_distribution(run_projector(build_projector(gens, n), psi), n)
    for idx in range(1 << n):
        bits = [(idx >> (n - 1 - i)) & 1 for i in range(n)]
        flipped = [g if b == 0 else -g for g, b in zip(gens, bits)]
        part = project(psi, flipped)
        assert probs[idx] == pytest.approx(np.vdot(part, part).real, abs=1e-10)


def test_sign_string_examples():
    comp = [P("ZII"), P("IZI"), P("IIZ")]
    assert sign_string(P("III"), EXAMPLE) == "+++"
    assert sign_string(P("XII"), comp) == "-++"


@given(st.integers(0, 10**6), st.text("IXYZ", min_size=3, max_size=3))
def test_sign_string_survives_conjugation(seed, letters):
    comp = [P("ZII"), P("IZI"), P("IIZ")]
    u = random_clifford_t(3, 15, 0.0, seed)
    x = P(letters)
    conj = conjugate_paulis(comp + [x], u)
    assert sign_string(conj[-1], conj[:3]) == sign_string(x, comp)


def _tv(p, q):
    return 0.5 * float(np.abs(p - q).sum())


def test_distribution_clifford_circuit():
    c = random_clifford_t(3, 20, 0.0, 1)
    assert _tv(distribution_via_projector(c), distribution(simulate(c))) < 1e-9


def test_distribution_t_then_h():
    c = Circuit(1, (T(0), H(0)))
    assert _tv(distribution_via_projector(c, verify=True), distribution(simulate(c))) < 1e-9


def test_distribution_empty_clifford_part():
    c = Circuit(2, (T(0), T(1)))
    assert _tv(distribution_via_projector(c), distribution(simulate(c))) < 1e-9


@given(st.integers(2, 4), st.integers(5, 30), st.integers(0, 10**6))
def test_distribution_equivalence(n, d, seed):
    c = random_clifford_t(n, d, 0.2, seed)
    assert _tv(distribution_via_projector(c), distribution(simulate(c))) < 1e-9


def test_canonical_threshold():
    assert canonical_threshold(2) == 4.0
    assert canonical_threshold(4) == 8.0
    with pytest.raises(ProjectorError):
        canonical_threshold(1)
    assert threshold_report_csv([(2, 5), (4, 3)]) == "n,gate_count,threshold,above\n2,5,4,1\n4,3,8,0\n"
