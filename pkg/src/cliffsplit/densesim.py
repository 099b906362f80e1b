"""Dense statevector simulation.

States are plain complex numpy arrays of length ``2**n`` (optionally with
trailing batch axes), qubit 0 being the most significant index bit.  Gates are
applied in place one at a time on strided views; no gate matrix is built.
"""
from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Gate
from .pauli import PauliSum

UNITARY_MAX_QUBITS = 6

_SQ2 = 1 / math.sqrt(2)
_DIAG = {
    "Z": (1, -1),
    "S": (1, 1j),
    "Sdg": (1, -1j),
    "T": (1, cmath.exp(1j * math.pi / 4)),
    "Tdg": (1, cmath.exp(-1j * math.pi / 4)),
}


def n_qubits_of(state: np.ndarray) -> int:
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if n < 1 or 1 << n != dim:
        raise ValueError(f"state length {dim} is not a power of two >= 2")
    return n


def zero_state(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    s = np.zeros(1 << n, dtype=complex)
    s[0] = 1.0
    return s


def basis_state(n: int, index: int) -> np.ndarray:
    s = np.zeros(1 << n, dtype=complex)
    s[index] = 1.0
    return s


def apply_gate(state: np.ndarray, gate: Gate, n: int, params: Sequence[float] | None = None) -> None:
    """In-place update of ``state`` (shape ``(2**n, *batch)``)."""
    rest = state.size >> n
    kind = gate.kind
    if len(gate.qubits) == 1:
        q = gate.qubits[0]
        v = state.reshape(1 << q, 2, ((1 << (n - q - 1)) * rest))
        a, b = v[:, 0, :], v[:, 1, :]
        if kind in _DIAG:
            d0, d1 = _DIAG[kind]
            if d0 != 1:
                a *= d0
            b *= d1
        elif kind == "Rz":
            theta = gate.phase.radians(params)
            a *= cmath.exp(-0.5j * theta)
            b *= cmath.exp(0.5j * theta)
        elif kind == "H":
            tmp = a.copy()
            a += b
            a *= _SQ2
            tmp -= b
            tmp *= _SQ2
            b[...] = tmp
        elif kind == "X":
            tmp = a.copy()
            a[...] = b
            b[...] = tmp
        elif kind == "Y":
            tmp = a.copy()
            a[...] = -1j * b
            b[...] = 1j * tmp
        else:  # pragma: no cover - Gate validates kinds
            raise CircuitError(kind)
        return
    c, t = gate.qubits
    v = state.reshape((2,) * n + (rest,))
    if kind == "CZ":
        idx = [slice(None)] * (n + 1)
        idx[c] = 1
        idx[t] = 1
        v[tuple(idx)] *= -1
    elif kind == "CNOT":
        i0 = [slice(None)] * (n + 1)
        i1 = [slice(None)] * (n + 1)
        i0[c] = i1[c] = 1
        i0[t] = 0
        i1[t] = 1
        i0, i1 = tuple(i0), tuple(i1)
        tmp = v[i0].copy()
        v[i0] = v[i1]
        v[i1] = tmp
    else:  # pragma: no cover
        raise CircuitError(kind)


def evolve(state: np.ndarray, circuit: Circuit, params: Sequence[float] | None = None) -> np.ndarray:
    """Return a new state ``U(circuit) @ state``."""
    n = n_qubits_of(state)
    if n != circuit.n_qubits:
        raise ValueError(f"state has {n} qubits, circuit has {circuit.n_qubits}")
    out = np.array(state, dtype=complex, copy=True, order="C")
    for g in circuit.gates:
        apply_gate(out, g, n, params)
    return out


def simulate(circuit: Circuit, params: Sequence[float] | None = None) -> np.ndarray:
    return evolve(zero_state(circuit.n_qubits), circuit, params)


def unitary(circuit: Circuit, params: Sequence[float] | None = None) -> np.ndarray:
    """Full matrix of ``circuit``; column k is the evolution of basis state k."""
    n = circuit.n_qubits
    if n > UNITARY_MAX_QUBITS:
        raise ValueError(f"unitary() is capped at {UNITARY_MAX_QUBITS} qubits, got {n}")
    return evolve(np.eye(1 << n, dtype=complex), circuit, params)


class _ParamRz:
    """Rz(coeff * theta[param] + offset) as a diagonal over the full register."""

    __slots__ = ("param", "coeff", "offset", "signs")

    def __init__(self, gate: Gate, n: int):
        self.param = gate.phase.param
        self.coeff = gate.phase.coeff
        self.offset = float(gate.phase.value) * math.pi
        bit = (np.arange(1 << n) >> (n - 1 - gate.qubits[0])) & 1
        self.signs = -0.5j * (1 - 2 * bit)

    def apply(self, state: np.ndarray, params: Sequence[float]) -> np.ndarray:
        theta = self.coeff * float(params[self.param]) + self.offset
        return state * np.exp(theta * self.signs)


class FusedCircuit:
    """A circuit with each run of parameter-free gates folded into one matrix.

    Parametric Rz gates stay separate as diagonals, so re-evaluating at new
    parameters, or with one of them swapped out, costs one product per op.
    Fusion only happens up to ``UNITARY_MAX_QUBITS``; larger circuits keep their gates.
    """

    def __init__(self, circuit: Circuit):
        self.n = circuit.n_qubits
        self.ops: list = []
        self.slot: dict[int, int] = {}  # gate index -> op index for parametric gates
        fuse = self.n <= UNITARY_MAX_QUBITS
        pending: list[Gate] = []

        def flush():
            if pending:
                self.ops.append(unitary(Circuit(self.n, tuple(pending))))
                pending.clear()

        for i, g in enumerate(circuit.gates):
            parametric = g.kind == "Rz" and g.phase.is_parametric
            if fuse and not parametric:
                pending.append(g)
                continue
            flush()
            if parametric:
                self.slot[i] = len(self.ops)
                self.ops.append(_ParamRz(g, self.n))
            else:
                self.ops.append(g)
        flush()

    def replaced(self, gate_index: int, gate: Gate) -> FusedCircuit:
        """Copy with the parametric gate at ``gate_index`` swapped for another parametric Rz."""
        out = object.__new__(FusedCircuit)
        out.n, out.slot = self.n, self.slot
        out.ops = list(self.ops)
        out.ops[self.slot[gate_index]] = _ParamRz(gate, self.n)
        return out

    def evolve(self, state: np.ndarray, params: Sequence[float] | None = None) -> np.ndarray:
        out = np.array(state, dtype=complex, copy=True)
        for op in self.ops:
            if isinstance(op, _ParamRz):
                if params is None:
                    raise CircuitError(f"unbound parameter {op.param}")
                out = op.apply(out, params)
            elif isinstance(op, Gate):
                apply_gate(out, op, self.n, params)
            else:
                out = op @ out
        return out


def expectation(state: np.ndarray, observable: PauliSum) -> float:
    n = n_qubits_of(state)
    if n != observable.n:
        raise ValueError(f"state has {n} qubits, observable has {observable.n}")
    total = 0j
    for c, p in observable.terms:
        if c == 0.0:
            continue
        total += c * np.vdot(state, p.apply(state))
    if abs(total.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary residue {total.imag:g}")
    return float(total.real)


def distribution(state: np.ndarray) -> np.ndarray:
    return np.abs(state) ** 2


def overlap(a: np.ndarray, b: np.ndarray) -> float:
    """Modulus of the normalized inner product; 1 means equal up to global phase."""
    return float(abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b)))


def unitary_overlap(u: np.ndarray, v: np.ndarray) -> float:
    """|Tr(U^dagger V)| / dim."""
    return float(abs(np.trace(u.conj().T @ v)) / u.shape[0])


def composite_simulate(circuit: Circuit, params: Sequence[float] | None = None) -> np.ndarray:
    """Split on the left, reconstruct the Clifford part's state from its tableau, then evolve
    densely through the non-Clifford remainder."""
    from .border import split
    from .stabilizer import run_tableau, tableau_statevector

    parts = split(circuit, "left")
    psi = tableau_statevector(run_tableau(parts.clifford))
    return evolve(psi, parts.non_clifford, params)


def state_to_json(state: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state]


def state_from_json(data: list) -> np.ndarray:
    return np.array([complex(re, im) for re, im in data], dtype=complex)


def distribution_csv(probs: np.ndarray) -> str:
    lines = ["index,probability"]
    lines += [f"{i},{p:.17g}" for i, p in enumerate(probs)]
    return "\n".join(lines) + "\n"
