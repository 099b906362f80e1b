"""Signed Pauli strings in symplectic form and real-weighted Pauli sums.

Qubit 0 is the leftmost letter and the most significant bit of a basis index.
A string is ``i**k`` times a tensor product of the letters I, X, Z, Y where the
letter Y is the Y matrix itself (not XZ).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {v: k for k, v in _LETTERS.items()}
_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_SIGN_EXP = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}

_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _g(x1: np.ndarray, z1: np.ndarray, x2: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Per-site exponent of i picked up by letter(x1,z1) * letter(x2,z2)."""
    x1, z1, x2, z2 = (a.astype(np.int64) for a in (x1, z1, x2, z2))
    return np.where(
        (x1 == 0) & (z1 == 0), 0,
        np.where((x1 == 1) & (z1 == 1), z2 - x2,
                 np.where(x1 == 1, z2 * (2 * x2 - 1), x2 * (1 - 2 * z2))))


@dataclass(frozen=True, eq=False)
class PauliString:
    x: np.ndarray
    z: np.ndarray
    phase_exp: int = 0  # overall factor i**phase_exp

    def __post_init__(self):
        x = np.asarray(self.x, dtype=bool).copy()
        z = np.asarray(self.z, dtype=bool).copy()
        if x.shape != z.shape or x.ndim != 1:
            raise ValueError("x and z must be 1-d arrays of equal length")
        x.flags.writeable = False
        z.flags.writeable = False
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % 4)

    @classmethod
    def from_str(cls, text: str) -> PauliString:
        """Parse literals such as ``"+ZZY"``, ``"-iXI"`` or ``"XZ"``."""
        text = text.strip()
        i = 0
        while i < len(text) and text[i] not in "IXYZ":
            i += 1
        prefix, body = text[:i], text[i:]
        if prefix not in _SIGN_EXP or not body or any(c not in "IXYZ" for c in body):
            raise ValueError(f"bad Pauli literal {text!r}")
        bits = [_BITS[c] for c in body]
        return cls(np.array([b[0] for b in bits]), np.array([b[1] for b in bits]), _SIGN_EXP[prefix])

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(np.zeros(n, bool), np.zeros(n, bool))

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> PauliString:
        s = ["I"] * n
        s[qubit] = letter
        return cls.from_str("".join(s))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def sign(self) -> complex:
        return 1j ** self.phase_exp

    @property
    def letters(self) -> str:
        return "".join(_LETTERS[(int(a), int(b))] for a, b in zip(self.x, self.z))

    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    def is_identity(self) -> bool:
        return self.weight() == 0

    def with_sign(self, phase_exp: int) -> PauliString:
        return PauliString(self.x, self.z, phase_exp)

    def unsigned(self) -> PauliString:
        return PauliString(self.x, self.z, 0)

    def to_matrix(self) -> np.ndarray:
        m = np.array([[1.0 + 0j]])
        for c in self.letters:
            m = np.kron(m, _PAULI_MATS[c])
        return self.sign * m

    def masks(self) -> tuple[int, int]:
        """Bit masks of the x and z parts over basis indices (qubit 0 = MSB)."""
        n = self.n
        xm = sum(1 << (n - 1 - k) for k in range(n) if self.x[k])
        zm = sum(1 << (n - 1 - k) for k in range(n) if self.z[k])
        return xm, zm

    def apply(self, state: np.ndarray) -> np.ndarray:
        """Return ``P @ state`` without building the matrix; ``state`` may carry trailing batch axes."""
        n = self.n
        dim = 1 << n
        if state.shape[0] != dim:
            raise ValueError("state dimension does not match Pauli length")
        xm, zm = self.masks()
        idx = np.arange(dim)
        src = idx ^ xm
        # P = sign * i^{#Y} * X^x Z^z ; (Pψ)[j] = c (-1)^{|src & z|} ψ[src]
        n_y = int(np.count_nonzero(self.x & self.z))
        signs = 1 - 2 * (np.bitwise_count(src & zm) & 1).astype(np.int64)
        coef = (1j ** ((self.phase_exp + n_y) % 4)) * signs
        if state.ndim > 1:
            coef = coef.reshape((dim,) + (1,) * (state.ndim - 1))
        return coef * state[src]

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_multiply(self, other)

    def __neg__(self) -> PauliString:
        return self.with_sign(self.phase_exp + 2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (self.phase_exp == other.phase_exp and np.array_equal(self.x, other.x)
                and np.array_equal(self.z, other.z))

    def __hash__(self) -> int:
        return hash((self.x.tobytes(), self.z.tobytes(), self.phase_exp))

    def __str__(self) -> str:
        return _SIGNS[self.phase_exp] + self.letters

    __repr__ = __str__


def _check_len(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise ValueError(f"length mismatch: {p.n} vs {q.n}")


def pauli_commutes(p: PauliString, q: PauliString) -> bool:
    _check_len(p, q)
    return int(np.count_nonzero(p.x & q.z) + np.count_nonzero(p.z & q.x)) % 2 == 0


def pauli_multiply(p: PauliString, q: PauliString) -> PauliString:
    _check_len(p, q)
    k = p.phase_exp + q.phase_exp + int(_g(p.x, p.z, q.x, q.z).sum())
    return PauliString(p.x ^ q.x, p.z ^ q.z, k)


class PauliSum:
    """Real-weighted sum of unsigned Pauli strings; duplicate strings are merged."""

    def __init__(self, terms: Iterable[tuple[float, PauliString | str]] = (), n: int | None = None):
        merged: dict[PauliString, float] = {}
        for coeff, p in terms:
            if isinstance(p, str):
                p = PauliString.from_str(p)
            if p.phase_exp not in (0, 2):
                raise ValueError(f"term {p} is not Hermitian")
            c = float(coeff) * (1 if p.phase_exp == 0 else -1)
            key = p.unsigned()
            if n is None:
                n = key.n
            elif key.n != n:
                raise ValueError("all terms must act on the same number of qubits")
            merged[key] = merged.get(key, 0.0) + c
        if n is None:
            raise ValueError("empty PauliSum needs an explicit qubit count")
        self.n = n
        self.terms: list[tuple[float, PauliString]] = list((c, p) for p, c in merged.items())

    @classmethod
    def from_dict(cls, data: dict[str, float]) -> PauliSum:
        return cls((c, p) for p, c in data.items())

    def to_dict(self) -> dict[str, float]:
        return {p.letters: c for c, p in self.terms}

    def to_json(self) -> dict:
        return {"n_qubits": self.n, "terms": [{"pauli": p.letters, "coeff": c} for c, p in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> PauliSum:
        if isinstance(data, dict) and "terms" in data:
            return cls(((t["coeff"], t["pauli"]) for t in data["terms"]), n=data.get("n_qubits"))
        return cls.from_dict(data)

    def to_matrix(self) -> np.ndarray:
        dim = 1 << self.n
        m = np.zeros((dim, dim), dtype=complex)
        for c, p in self.terms:
            m += c * p.to_matrix()
        return m

    def __add__(self, other: PauliSum) -> PauliSum:
        return PauliSum(self.terms + other.terms, n=self.n)

    def scaled(self, factor: float) -> PauliSum:
        return PauliSum(((factor * c, p) for c, p in self.terms), n=self.n)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return " + ".join(f"{c:g}*{p.letters}" for c, p in self.terms) or "0"


def paulis_from_strings(strings: Sequence[str]) -> list[PauliString]:
    return [PauliString.from_str(s) for s in strings]
