import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cliffsplit.circuit import Circuit, Gate, Phase, random_clifford_t
from cliffsplit.pauli import PauliString

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ONE = ("H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg")
CLIFF_ONE = ("H", "X", "Y", "Z", "S", "Sdg")


@st.composite
def circuits(draw, min_n=1, max_n=4, max_gates=25, clifford=False, rz=True):
    n = draw(st.integers(min_n, max_n))
    kinds = list(CLIFF_ONE if clifford else ONE)
    if n > 1:
        kinds += ["CNOT", "CZ"]
    if rz:
        kinds.append("Rz")
    gates = []
    for _ in range(draw(st.integers(0, max_gates))):
        k = draw(st.sampled_from(kinds))
        if k in ("CNOT", "CZ"):
            a = draw(st.integers(0, n - 1))
            b = draw(st.integers(0, n - 2))
            gates.append(Gate(k, (a, b + (b >= a))))
        elif k == "Rz":
            den = draw(st.sampled_from((1, 2) if clifford else (1, 2, 4, 8)))
            gates.append(Gate("Rz", (draw(st.integers(0, n - 1)),), Phase(draw(st.integers(-7, 7)), den)))
        else:
            gates.append(Gate(k, (draw(st.integers(0, n - 1)),)))
    return Circuit(n, tuple(gates))


@st.composite
def clifford_t(draw, min_n=2, max_n=4, min_depth=1, max_depth=30, t_prob=0.2):
    """Circuits from the package's own random generator, with hypothesis choosing the seed."""
    n = draw(st.integers(min_n, max_n))
    d = draw(st.integers(min_depth, max_depth))
    return random_clifford_t(n, d, t_prob, draw(st.integers(0, 2**31 - 1)))


@st.composite
def paulis(draw, n=None, max_n=4, signed=True):
    n = n if n is not None else draw(st.integers(1, max_n))
    body = "".join(draw(st.lists(st.sampled_from("IXYZ"), min_size=n, max_size=n)))
    sign = draw(st.sampled_from(["+", "-", "+i", "-i"])) if signed else "+"
    return PauliString.from_str(sign + body)


def random_state(n, rng):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
