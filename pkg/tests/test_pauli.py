import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffsplit.pauli import PauliString, PauliSum, pauli_commutes, pauli_multiply

from conftest import paulis

P = PauliString.from_str


def test_commutes_examples():
    assert not pauli_commutes(P("XI"), P("ZI"))
    assert pauli_commutes(P("ZZY"), P("ZXZ"))
    a, b = P("ZZY").to_matrix(), P("ZXZ").to_matrix()
    assert np.allclose(a @ b, b @ a)


@given(paulis())
def test_self_commutation(p):
    assert pauli_commutes(p, p)


def test_commutes_matches_matrix_commutator_exhaustively():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(1, 4))
        p, q = (P("".join(rng.choice(list("IXYZ"), n))) for _ in range(2))
        a, b = p.to_matrix(), q.to_matrix()
        assert pauli_commutes(p, q) == np.allclose(a @ b, b @ a)


def test_multiply_examples():
    assert pauli_multiply(P("+X"), P("+Z")) == P("-iY")
    assert P("ZXY") * P("ZXY") == P("+III")


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(paulis(n=n), paulis(n=n), paulis(n=n))))
def test_multiply_matches_matrices_and_associates(triple):
    p, q, r = triple
    np.testing.assert_allclose((p * q).to_matrix(), p.to_matrix() @ q.to_matrix(), atol=1e-12)
    assert (p * q) * r == p * (q * r)


def test_length_mismatch():
    with pytest.raises(ValueError):
        pauli_commutes(P("X"), P("XX"))
    with pytest.raises(ValueError):
        pauli_multiply(P("X"), P("XX"))


def test_letters_follow_bits():
    p = PauliString(np.array([0, 1, 0, 1]), np.array([0, 0, 1, 1]))
    assert p.letters == "IXZY"


@given(paulis(max_n=3))
def test_apply_matches_matrix(p):
    rng = np.random.default_rng(p.n)
    v = rng.normal(size=1 << p.n) + 1j * rng.normal(size=1 << p.n)
    np.testing.assert_allclose(p.apply(v), p.to_matrix() @ v, atol=1e-12)


def test_pauli_sum_merges_duplicates_and_rejects_signs():
    s = PauliSum([(0.5, "ZZ"), (0.25, "ZZ"), (-0.3, "XI")])
    assert s.to_dict() == {"ZZ": 0.75, "XI": -0.3}
    assert np.allclose(s.to_matrix(), s.to_matrix().conj().T)
    assert PauliSum.from_json(s.to_json()).to_dict() == s.to_dict()


@pytest.mark.parametrize("bad", ["+iXX"])
def test_pauli_sum_needs_hermitian_terms(bad):
    with pytest.raises(ValueError):
        PauliSum([(1.0, bad)])


def test_all_two_qubit_products_close():
    strings = ["".join(t) for t in itertools.product("IXYZ", repeat=2)]
    for a in strings:
        for b in strings:
            prod = P(a) * P(b)
            assert prod.letters in strings and prod.phase_exp in range(4)
