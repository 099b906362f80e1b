"""Aaronson-Gottesman tableau simulation and statevector reconstruction from generators.

Rows are bit-packed: for every qubit there is one integer holding that qubit's
x bits across all rows (and one for z bits), plus one integer of sign bits, so
each gate update is a handful of integer operations regardless of n.
"""
from __future__ import annotations

import json
from functools import lru_cache
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Gate
from .pauli import PauliString, pauli_commutes


class StabilizerError(ValueError):
    pass


class PauliRows:
    """A stack of ±1-signed Pauli rows updated by Clifford conjugation P -> U P U^dagger."""

    def __init__(self, n: int, n_rows: int):
        self.n = n
        self.n_rows = n_rows
        self.mask = (1 << n_rows) - 1
        self.xs = [0] * n
        self.zs = [0] * n
        self.r = 0

    @classmethod
    def from_paulis(cls, paulis: Sequence[PauliString]) -> PauliRows:
        if not paulis:
            raise ValueError("need at least one row")
        rows = cls(paulis[0].n, len(paulis))
        for i, p in enumerate(paulis):
            if p.n != rows.n:
                raise ValueError("length mismatch")
            if p.phase_exp not in (0, 2):
                raise ValueError(f"row {p} must carry a real sign")
            bit = 1 << i
            for q in range(rows.n):
                if p.x[q]:
                    rows.xs[q] |= bit
                if p.z[q]:
                    rows.zs[q] |= bit
            if p.phase_exp == 2:
                rows.r |= bit
        return rows

    def copy(self) -> PauliRows:
        out = PauliRows(self.n, self.n_rows)
        out.xs = list(self.xs)
        out.zs = list(self.zs)
        out.r = self.r
        return out

    def row(self, i: int) -> PauliString:
        bit = 1 << i
        x = np.array([bool(v & bit) for v in self.xs])
        z = np.array([bool(v & bit) for v in self.zs])
        return PauliString(x, z, 2 if self.r & bit else 0)

    # -- elementary conjugations -------------------------------------------
    def h(self, a: int) -> None:
        self.r ^= self.xs[a] & self.zs[a]
        self.xs[a], self.zs[a] = self.zs[a], self.xs[a]

    def s(self, a: int) -> None:
        self.r ^= self.xs[a] & self.zs[a]
        self.zs[a] ^= self.xs[a]

    def x(self, a: int) -> None:
        self.r ^= self.zs[a]

    def y(self, a: int) -> None:
        self.r ^= self.xs[a] ^ self.zs[a]

    def z(self, a: int) -> None:
        self.r ^= self.xs[a]

    def cnot(self, a: int, b: int) -> None:
        xs, zs = self.xs, self.zs
        self.r ^= xs[a] & zs[b] & ~(xs[b] ^ zs[a]) & self.mask
        xs[b] ^= xs[a]
        zs[a] ^= zs[b]

    def cz(self, a: int, b: int) -> None:
        # H_b CNOT(a, b) H_b folded into one update
        xs, zs = self.xs, self.zs
        self.r ^= xs[a] & xs[b] & (zs[a] ^ zs[b])
        zs[a] ^= xs[b]
        zs[b] ^= xs[a]

    def sdg(self, a: int) -> None:
        self.s(a)
        self.z(a)

    def rz(self, gate: Gate) -> None:
        if not gate.phase.is_clifford():
            raise StabilizerError(f"non-Clifford gate {gate}")
        # Rz(k pi/2) is S^k up to global phase
        for _ in range(int(gate.phase.value * 2) % 4):
            self.s(gate.qubits[0])

    _DISPATCH = {"H": h, "S": s, "Sdg": sdg, "X": x, "Y": y, "Z": z, "CNOT": cnot, "CZ": cz}

    def apply(self, gate: Gate) -> None:
        op = self._DISPATCH.get(gate.kind)
        if op is not None:
            op(self, *gate.qubits)
        elif gate.kind == "Rz":
            self.rz(gate)
        elif gate.kind in ("T", "Tdg"):
            raise StabilizerError(f"non-Clifford gate {gate}")
        else:  # pragma: no cover
            raise CircuitError(gate.kind)

    def apply_circuit(self, circuit: Circuit) -> None:
        dispatch = self._DISPATCH
        for g in circuit.gates:
            op = dispatch.get(g.kind)
            if op is None:
                self.apply(g)
            else:
                op(self, *g.qubits)


class Tableau(PauliRows):
    """Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers."""

    def __init__(self, n: int):
        if n < 1:
            raise StabilizerError("n must be >= 1")
        super().__init__(n, 2 * n)
        for q in range(n):
            self.xs[q] = 1 << q
            self.zs[q] = 1 << (n + q)

    def copy(self) -> Tableau:
        out = Tableau(self.n)
        out.xs = list(self.xs)
        out.zs = list(self.zs)
        out.r = self.r
        return out

    def destabilizers(self) -> list[PauliString]:
        return [self.row(i) for i in range(self.n)]

    def stabilizers(self) -> list[PauliString]:
        return [self.row(self.n + i) for i in range(self.n)]

    def stabilizer_masks(self) -> list[tuple[int, int, int]]:
        n = self.n
        rows = []
        for i in range(n, 2 * n):
            x = int("".join("1" if (v >> i) & 1 else "0" for v in self.xs), 2)
            z = int("".join("1" if (v >> i) & 1 else "0" for v in self.zs), 2)
            rows.append((x, z, 2 * ((self.r >> i) & 1)))
        return rows

    def check_invariants(self) -> None:
        """Raise if the rows are not a symplectic basis with the expected pairing."""
        n = self.n
        destab, stab = self.destabilizers(), self.stabilizers()
        for i in range(n):
            for j in range(n):
                if not pauli_commutes(stab[i], stab[j]):
                    raise StabilizerError(f"stabilizers {i},{j} anticommute")
                if (i != j) != pauli_commutes(destab[i], stab[j]):
                    raise StabilizerError(f"destabilizer {i} / stabilizer {j} pairing broken")
                if i != j and not pauli_commutes(destab[i], destab[j]):
                    raise StabilizerError(f"destabilizers {i},{j} anticommute")
        if _gf2_rank(destab + stab) != 2 * n:
            raise StabilizerError("rows are not independent")

    def to_json(self) -> dict:
        return {"n": self.n,
                "destabilizers": [str(p) for p in self.destabilizers()],
                "stabilizers": [str(p) for p in self.stabilizers()]}

    @classmethod
    def from_json(cls, data: dict) -> Tableau:
        rows = PauliRows.from_paulis([PauliString.from_str(s) for s in data["destabilizers"] + data["stabilizers"]])
        t = cls(int(data["n"]))
        t.xs, t.zs, t.r = rows.xs, rows.zs, rows.r
        return t

    def __repr__(self) -> str:
        return f"Tableau(stabilizers={[str(p) for p in self.stabilizers()]})"


def new_tableau(n: int) -> Tableau:
    return Tableau(n)


def apply_clifford(t: Tableau, g: Gate) -> Tableau:
    out = t.copy()
    out.apply(g)
    return out


def run_tableau(c: Circuit) -> Tableau:
    t = Tableau(c.n_qubits)
    t.apply_circuit(c)
    return t


def generators(t: Tableau) -> list[PauliString]:
    return t.stabilizers()


def conjugate_paulis(paulis: Sequence[PauliString], circuit: Circuit) -> list[PauliString]:
    """Map each P to U P U^dagger for the Clifford ``circuit`` U."""
    rows = PauliRows.from_paulis(list(paulis))
    rows.apply_circuit(circuit)
    return [rows.row(i) for i in range(rows.n_rows)]


# ---------------------------------------------------------------------------
# reconstruction
#
# Generators are handled as (x, z, e) integer triples: bit (n-1-q) of x/z is
# qubit q's bit, matching basis-index order, and the row is i**e * letters.

def _pc(v: int) -> int:
    return v.bit_count()


def _mask_row(p: PauliString) -> tuple[int, int, int]:
    xm, zm = p.masks()
    return xm, zm, p.phase_exp


def _row_mul(a: tuple[int, int, int], b: tuple[int, int, int]) -> tuple[int, int, int]:
    x1, z1, e1 = a
    x2, z2, e2 = b
    y1, xo1, zo1 = x1 & z1, x1 & ~z1, z1 & ~x1
    e = (e1 + e2
         + (y1 & z2 & ~x2).bit_count() - (y1 & x2 & ~z2).bit_count()
         + (xo1 & z2 & x2).bit_count() - (xo1 & z2 & ~x2).bit_count()
         + (zo1 & x2 & ~z2).bit_count() - (zo1 & x2 & z2).bit_count())
    return x1 ^ x2, z1 ^ z2, e % 4


def _rank(vecs: list[int]) -> int:
    rank = 0
    vecs = [v for v in vecs if v]
    while vecs:
        pivot = max(vecs)
        top = pivot.bit_length() - 1
        vecs = [w for w in (v ^ pivot if (v >> top) & 1 else v for v in vecs if v is not pivot) if w]
        rank += 1
    return rank


def _gf2_rank(paulis: Sequence[PauliString]) -> int:
    n = paulis[0].n
    return _rank([(x << n) | z for x, z, _ in map(_mask_row, paulis)])


def _validate_rows(n: int, rows: list[tuple[int, int, int]]) -> None:
    if len(rows) != n:
        raise StabilizerError(f"need {n} generators of length {n}")
    for x, z, e in rows:
        if e not in (0, 2):
            raise StabilizerError("generators must have sign +1 or -1")
    for i in range(n):
        xi, zi, _ = rows[i]
        for j in range(i + 1, n):
            xj, zj, _ = rows[j]
            if (_pc(xi & zj) + _pc(zi & xj)) & 1:
                raise StabilizerError(f"generators {i} and {j} anticommute")
    if _rank([(x << n) | z for x, z, _ in rows]) != n:
        raise StabilizerError("generators are not independent")


def validate_generators(gens: Sequence[PauliString]) -> int:
    if not gens:
        raise StabilizerError("empty generator list")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise StabilizerError("generators have different lengths")
    _validate_rows(n, [_mask_row(g) for g in gens])
    return n


def _first_support_index(n: int, rows: list[tuple[int, int, int]]) -> int:
    rows = list(rows)
    used = [False] * len(rows)
    for q in range(n):
        bit = 1 << (n - 1 - q)
        piv = next((i for i, r in enumerate(rows) if not used[i] and r[0] & bit), None)
        if piv is None:
            continue
        used[piv] = True
        for i, r in enumerate(rows):
            if i != piv and r[0] & bit:
                rows[i] = _row_mul(rows[piv], r)
    # parity constraints z . k = rhs from the x-free group elements
    cons = [[r[1], r[2] == 2] for i, r in enumerate(rows) if not used[i]]
    pivot_rows: dict[int, int] = {}
    for q in range(n - 1, -1, -1):
        bit = 1 << (n - 1 - q)
        taken = set(pivot_rows.values())
        piv = next((i for i, c in enumerate(cons) if i not in taken and c[0] & bit), None)
        if piv is None:
            continue
        pivot_rows[q] = piv
        for i, c in enumerate(cons):
            if i != piv and c[0] & bit:
                c[0] ^= cons[piv][0]
                c[1] ^= cons[piv][1]
    if any(c[0] == 0 and c[1] for c in cons):
        raise StabilizerError("generator signs are inconsistent")
    # free bits are 0; a pivot row only involves free bits of higher significance
    k = 0
    for q, i in pivot_rows.items():
        if cons[i][1]:
            k |= 1 << (n - 1 - q)
    return k


def first_support_index(gens: Sequence[PauliString]) -> int:
    """Smallest basis index k with <k|psi> != 0 for the state stabilized by ``gens``.

    This is the first computational basis seed whose projection survives,
    read off from the Z-type part of the stabilizer group instead of by trial.
    """
    return _first_support_index(gens[0].n, [_mask_row(g) for g in gens])


@lru_cache(maxsize=None)
def _parity_signs(dim: int) -> np.ndarray:
    """(-1)**popcount(i) for i < dim."""
    return 1.0 - 2.0 * (np.bitwise_count(np.arange(dim)) & 1)


def _apply_row(row: tuple[int, int, int], v: np.ndarray, idx: np.ndarray) -> np.ndarray:
    x, z, e = row
    src = idx ^ x
    return (1j ** ((e + _pc(x & z)) % 4)) * _parity_signs(v.shape[0])[src & z] * v[src]


def _project_rows(v: np.ndarray, rows: list[tuple[int, int, int]]) -> np.ndarray:
    # once annihilated, the vector stays zero, so one norm check at the end suffices
    idx = np.arange(v.shape[0])
    for row in rows:
        v = 0.5 * (v + _apply_row(row, v, idx))
    if np.linalg.norm(v) < 1e-12:
        return np.zeros_like(v)
    return v


def project(state: np.ndarray, gens: Sequence[PauliString]) -> np.ndarray:
    """Apply prod_i (I + G_i)/2 to ``state`` without building any matrix."""
    return _project_rows(np.array(state, dtype=complex), [_mask_row(g) for g in gens])


def _reconstruct(n: int, rows: list[tuple[int, int, int]], seed_index: int | None,
                 validate: bool = True) -> np.ndarray:
    if validate:
        _validate_rows(n, rows)
    if seed_index is None:
        seed_index = _first_support_index(n, rows)
    seed = np.zeros(1 << n, dtype=complex)
    seed[seed_index] = 1.0
    v = _project_rows(seed, rows)
    norm = np.linalg.norm(v)
    if norm < 1e-12:
        raise StabilizerError(f"seed |{seed_index}> is annihilated by the projection")
    return v / norm


def stabilizer_statevector(gens: Sequence[PauliString], seed_index: int | None = None) -> np.ndarray:
    """Normalized state with G psi = psi for every generator, by projecting a basis seed.

    The default seed is the first basis state, in index order, that the
    projection does not annihilate.
    """
    if not gens:
        raise StabilizerError("empty generator list")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise StabilizerError("generators have different lengths")
    return _reconstruct(n, [_mask_row(g) for g in gens], seed_index)


def tableau_statevector(t: Tableau) -> np.ndarray:
    # tableau rows are valid by construction
    return _reconstruct(t.n, t.stabilizer_masks(), None, validate=False)


def generators_to_json(gens: Sequence[PauliString]) -> str:
    return json.dumps({"generators": [str(g) for g in gens]})
