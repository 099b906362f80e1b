"""Ancilla projector circuits for stabilizer generators, post-selection and sign strings.

Generator i is handled by ancilla ``n + i``; targets are qubits 0..n-1.  The
outcome string is read ancilla-0 first, so it is the most significant part of
the ancilla index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import CNOT, CZ, Circuit, Gate, H, S, Sdg, Z, adjoint, depth
from .densesim import distribution, evolve, n_qubits_of, simulate
from .pauli import PauliString, pauli_commutes
from .stabilizer import generators, run_tableau

MIN_PROBABILITY = 1e-12


class ProjectorError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectorCircuit:
    circuit: Circuit
    generator_order: tuple[PauliString, ...]
    ancilla_indices: tuple[int, ...]
    n_targets: int

    @property
    def controlled_ops(self) -> int:
        """Number of controlled single-letter operations (one per non-identity letter)."""
        return sum(g.weight() for g in self.generator_order)

    def logical_circuit(self) -> Circuit:
        """The circuit with each controlled letter as a single two-qubit op and signs dropped."""
        gates: list[Gate] = []
        for a, g in zip(self.ancilla_indices, self.generator_order):
            gates.append(H(a))
            gates += [CNOT(a, k) for k in range(self.n_targets) if g.x[k] or g.z[k]]
            gates.append(H(a))
        return Circuit(self.circuit.n_qubits, tuple(gates))

    def logical_depth(self) -> int:
        """Layers of the logical circuit plus the measurement layer."""
        return depth(self.logical_circuit()) + 1


def controlled_letter(a: int, k: int, letter: str) -> list[Gate]:
    if letter == "X":
        return [CNOT(a, k)]
    if letter == "Z":
        return [CZ(a, k)]
    if letter == "Y":
        # Y = S X Sdg on the target
        return [Sdg(k), CNOT(a, k), S(k)]
    raise ProjectorError(f"no controlled gate for letter {letter!r}")


def build_projector(gens: Sequence[PauliString], n: int) -> ProjectorCircuit:
    gens = tuple(gens)
    if not gens:
        raise ProjectorError("need at least one generator")
    gates: list[Gate] = []
    ancillas = []
    for i, g in enumerate(gens):
        if g.n != n:
            raise ProjectorError(f"generator {g} does not act on {n} qubits")
        if g.phase_exp not in (0, 2):
            raise ProjectorError(f"generator {g} must have sign +1 or -1")
        if g.is_identity():
            raise ProjectorError("identity generator does not define a projection")
        a = n + i
        ancillas.append(a)
        gates.append(H(a))
        if g.phase_exp == 2:
            gates.append(Z(a))
        for k, letter in enumerate(g.letters):
            if letter != "I":
                gates += controlled_letter(a, k, letter)
        gates.append(H(a))
    return ProjectorCircuit(Circuit(n + len(gens), tuple(gates)), gens, tuple(ancillas), n)


def projector_depth_bounds(n: int) -> tuple[int, int]:
    if n < 1:
        raise ProjectorError("n must be >= 1")
    return 3, 3 + n * n


def with_ancillas(target: np.ndarray, n_anc: int) -> np.ndarray:
    """target (x) |0...0> on the ancillas."""
    anc = np.zeros(1 << n_anc, dtype=complex)
    anc[0] = 1.0
    return np.kron(target, anc)


def postselect_ancillas(state: np.ndarray, n_targets: int, outcome: Sequence[int]) -> tuple[np.ndarray, float]:
    """Target-register state conditioned on ancilla bits ``outcome`` and its probability."""
    n = n_qubits_of(state)
    n_anc = n - n_targets
    if len(outcome) != n_anc:
        raise ProjectorError(f"outcome has {len(outcome)} bits for {n_anc} ancillas")
    idx = 0
    for b in outcome:
        if b not in (0, 1):
            raise ProjectorError("outcome bits must be 0 or 1")
        idx = (idx << 1) | b
    block = state.reshape(1 << n_targets, 1 << n_anc)[:, idx]
    p = float(np.vdot(block, block).real)
    if p < MIN_PROBABILITY:
        raise ProjectorError(f"outcome {''.join(map(str, outcome))} has probability {p:.3g}")
    return block / math.sqrt(p), p


def ancilla_distribution(state: np.ndarray, n_targets: int) -> np.ndarray:
    n_anc = n_qubits_of(state) - n_targets
    return (np.abs(state.reshape(1 << n_targets, 1 << n_anc)) ** 2).sum(axis=0)


def sign_string(x: PauliString, gens: Sequence[PauliString]) -> str:
    """'+' where x commutes with the generator, '-' where it anticommutes."""
    return "".join("+" if pauli_commutes(g, x) else "-" for g in gens)


def run_projector(pc: ProjectorCircuit, target: np.ndarray) -> np.ndarray:
    return evolve(with_ancillas(target, len(pc.ancilla_indices)), pc.circuit)


def distribution_via_projector(c: Circuit, verify: bool = False, tol: float = 1e-9) -> np.ndarray:
    """Output distribution of ``c`` read from the ancillas of a projector circuit.

    With ``c`` split as U_C U_NC, the generators of U_C^dagger|0> are measured on
    U_NC|0>.  Ancilla outcome s then has probability |<s|c|0>|^2, so outcome
    index s maps to basis index s.
    """
    from .border import split

    parts = split(c, "right")
    n = c.n_qubits
    gens = generators(run_tableau(adjoint(parts.clifford)))
    pc = build_projector(gens, n)
    probs = ancilla_distribution(run_projector(pc, simulate(parts.non_clifford)), n)
    if verify:
        direct = distribution(simulate(c))
        tv = 0.5 * float(np.abs(direct - probs).sum())
        if tv >= tol:
            raise ProjectorError(f"ancilla distribution deviates by total variation {tv:.3g}")
    return probs


def canonical_threshold(n: int) -> float:
    if n < 2:
        raise ProjectorError("canonical threshold needs n >= 2")
    return n * n / math.log2(n)


def threshold_report_csv(rows: Sequence[tuple[int, int]]) -> str:
    """CSV of (n, gate_count) pairs against the canonical threshold."""
    lines = ["n,gate_count,threshold,above"]
    for n, count in rows:
        t = canonical_threshold(n)
        lines.append(f"{n},{count},{t:.6g},{int(count > t)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "ProjectorCircuit", "ProjectorError", "build_projector", "projector_depth_bounds",
    "postselect_ancillas", "ancilla_distribution", "sign_string", "run_projector",
    "distribution_via_projector", "canonical_threshold", "threshold_report_csv", "with_ancillas",
]
