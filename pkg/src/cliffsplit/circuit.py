"""Gate-level circuit IR: exact phases, gates, circuits, QASM-subset reader, depth and random Clifford+T generation."""
from __future__ import annotations

import ast
import json
import math
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

ONE_QUBIT = ("H", "X", "Y", "Z", "S", "Sdg", "T", "Tdg", "Rz")
TWO_QUBIT = ("CNOT", "CZ")
GATE_KINDS = ONE_QUBIT + TWO_QUBIT
CLIFFORD_KINDS = frozenset({"H", "X", "Y", "Z", "S", "Sdg", "CNOT", "CZ"})

_DAGGER = {"S": "Sdg", "Sdg": "S", "T": "Tdg", "Tdg": "T"}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Phase:
    """An angle ``coeff * theta[param] + (num/den) * pi``.

    Constant phases have ``param=None``.  The constant part is kept in lowest
    terms with the angle reduced into (-2pi, 2pi], which is the period of
    ``Rz`` as a matrix, so normalization never changes a gate's unitary.
    """

    num: int
    den: int = 1
    param: int | None = None
    coeff: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("phase denominator is zero")
        frac = Fraction(self.num, self.den)
        # reduce into (-2, 2] in units of pi
        frac = frac - 4 * math.floor((frac + 2) / 4)
        if frac == -2:
            frac = Fraction(2)
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)
        if self.param is not None:
            if self.coeff not in (1, -1):
                raise ValueError("parameter coefficient must be +1 or -1")
        else:
            object.__setattr__(self, "coeff", 1)

    @classmethod
    def from_fraction(cls, frac: Fraction | int, param: int | None = None, coeff: int = 1) -> Phase:
        frac = Fraction(frac)
        return cls(frac.numerator, frac.denominator, param, coeff)

    @classmethod
    def from_radians(cls, angle: float, tol: float = 1e-12) -> Phase:
        """Nearest exact rational multiple of pi within ``tol``; otherwise the best
        approximation with denominator at most 2**20."""
        t = Fraction(angle / math.pi)
        for k in range(21):
            cand = t.limit_denominator(2**k)
            if abs(float(cand) * math.pi - angle) <= tol:
                return cls.from_fraction(cand)
        return cls.from_fraction(t.limit_denominator(2**20))

    @classmethod
    def parameter(cls, index: int, offset: Fraction | int = 0, coeff: int = 1) -> Phase:
        return cls.from_fraction(Fraction(offset), index, coeff)

    @property
    def value(self) -> Fraction:
        """Constant part in units of pi."""
        return Fraction(self.num, self.den)

    @property
    def is_parametric(self) -> bool:
        return self.param is not None

    def is_clifford(self) -> bool:
        return self.param is None and self.den in (1, 2)

    def is_zero(self) -> bool:
        """True when the phase is zero modulo 2pi."""
        return self.param is None and self.value % 2 == 0

    def mod_2pi(self) -> Phase:
        """Constant part reduced into [0, 2pi); used for spider phases."""
        return Phase.from_fraction(self.value % 2, self.param, self.coeff)

    def radians(self, params: Sequence[float] | None = None) -> float:
        angle = float(self.value) * math.pi
        if self.param is not None:
            if params is None:
                raise CircuitError(f"phase depends on unbound parameter {self.param}")
            angle += self.coeff * float(params[self.param])
        return angle

    def __add__(self, other: Phase) -> Phase:
        if self.param is not None and other.param is not None:
            raise CircuitError("cannot add two parametric phases")
        param, coeff = (self.param, self.coeff) if self.param is not None else (other.param, other.coeff)
        return Phase.from_fraction(self.value + other.value, param, coeff)

    def __neg__(self) -> Phase:
        return Phase.from_fraction(-self.value, self.param, -self.coeff)

    def __sub__(self, other: Phase) -> Phase:
        return self + (-other)

    def split_clifford(self) -> tuple[Phase, Phase]:
        """Split into (Clifford part, remainder) with the constant remainder in [0, pi/2)."""
        v = self.value
        k = Fraction(math.floor(v * 2), 2)
        return Phase.from_fraction(k), Phase.from_fraction(v - k, self.param, self.coeff)

    def to_json(self) -> dict:
        out = {"num": self.num, "den": self.den}
        if self.param is not None:
            out["param"] = self.param
            if self.coeff != 1:
                out["coeff"] = self.coeff
        return out

    @classmethod
    def from_json(cls, data: dict) -> Phase:
        return cls(int(data["num"]), int(data["den"]), data.get("param"), int(data.get("coeff", 1)))

    def __str__(self) -> str:
        const = "0" if self.num == 0 else f"{self.num}π/{self.den}" if self.den != 1 else f"{self.num}π"
        if self.param is None:
            return const
        sign = "" if self.coeff == 1 else "-"
        return f"{sign}θ{self.param}" + ("" if self.num == 0 else f"+{const}")


ZERO = Phase(0)

# named single-qubit gates as Z-phases (diagonal part only; X/Y/H are not phases)
KIND_PHASE = {
    "Z": Phase(1),
    "S": Phase(1, 2),
    "Sdg": Phase(-1, 2),
    "T": Phase(1, 4),
    "Tdg": Phase(-1, 4),
}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    phase: Phase | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.kind not in GATE_KINDS:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise CircuitError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise CircuitError(f"{self.kind} needs two distinct qubits")
        if (self.kind == "Rz") != (self.phase is not None):
            raise CircuitError("exactly the Rz gate carries a phase")

    def is_clifford(self) -> bool:
        if self.kind == "Rz":
            return self.phase.is_clifford()
        return self.kind in CLIFFORD_KINDS

    def dagger(self) -> Gate:
        if self.kind == "Rz":
            return Gate("Rz", self.qubits, -self.phase)
        return Gate(_DAGGER.get(self.kind, self.kind), self.qubits)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "qubits": list(self.qubits)}
        if self.phase is not None:
            out["phase"] = self.phase.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> Gate:
        phase = Phase.from_json(data["phase"]) if data.get("phase") is not None else None
        return cls(data["kind"], tuple(data["qubits"]), phase)

    def __str__(self) -> str:
        name = f"Rz({self.phase})" if self.kind == "Rz" else self.kind
        return f"{name}{self.qubits if len(self.qubits) > 1 else '(%d)' % self.qubits[0]}"


# short constructors, mostly for tests and scripts
def H(q): return Gate("H", (q,))
def X(q): return Gate("X", (q,))
def Y(q): return Gate("Y", (q,))
def Z(q): return Gate("Z", (q,))
def S(q): return Gate("S", (q,))
def Sdg(q): return Gate("Sdg", (q,))
def T(q): return Gate("T", (q,))
def Tdg(q): return Gate("Tdg", (q,))
def CNOT(c, t): return Gate("CNOT", (c, t))
def CZ(a, b): return Gate("CZ", (a, b))


def Rz(q, phase) -> Gate:
    if not isinstance(phase, Phase):
        phase = Phase.from_fraction(Fraction(phase))
    return Gate("Rz", (q,), phase)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        if self.n_qubits < 1:
            raise CircuitError("a circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits or min(g.qubits) < 0:
                raise CircuitError(f"gate {g} out of range for {self.n_qubits} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n_qubits != self.n_qubits:
            raise CircuitError("qubit count mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def appended(self, *gates: Gate) -> Circuit:
        return Circuit(self.n_qubits, self.gates + gates)

    def is_clifford(self) -> bool:
        return all(g.is_clifford() for g in self.gates)

    def gate_count(self) -> int:
        return len(self.gates)

    def non_clifford_count(self) -> int:
        return sum(not g.is_clifford() for g in self.gates)

    def parameters(self) -> set[int]:
        return {g.phase.param for g in self.gates if g.phase is not None and g.phase.param is not None}

    def to_json(self) -> dict:
        return {"n_qubits": self.n_qubits, "gates": [g.to_json() for g in self.gates]}

    @classmethod
    def from_json(cls, data: dict) -> Circuit:
        return cls(int(data["n_qubits"]), tuple(Gate.from_json(g) for g in data["gates"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, text: str) -> Circuit:
        return cls.from_json(json.loads(text))

    def __str__(self) -> str:
        return f"Circuit({self.n_qubits}, [{', '.join(map(str, self.gates))}])"


def adjoint(c: Circuit) -> Circuit:
    return Circuit(c.n_qubits, tuple(g.dagger() for g in reversed(c.gates)))


def depth(c: Circuit) -> int:
    """Greedy moment layering: each gate lands in the earliest layer with all its qubits free."""
    level = [0] * c.n_qubits
    for g in c.gates:
        layer = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = layer
    return max(level, default=0)


_SELF_INVERSE = frozenset({"H", "X", "Y", "Z", "CNOT", "CZ"})


def peephole(c: Circuit) -> Circuit:
    """Cancel adjacent self-inverse pairs and merge neighbouring Rz gates, cascading.

    Two gates are adjacent when no other gate touches their qubits in between.
    The unitary is unchanged up to global phase.
    """
    out: list[Gate | None] = []
    stacks: list[list[int]] = [[] for _ in range(c.n_qubits)]

    def top(q):
        return stacks[q][-1] if stacks[q] else None

    def same(a: Gate, b: Gate) -> bool:
        if a.kind != b.kind:
            return False
        return sorted(a.qubits) == sorted(b.qubits) if a.kind == "CZ" else a.qubits == b.qubits

    for g in c.gates:
        tops = {top(q) for q in g.qubits}
        j = tops.pop() if len(tops) == 1 else None
        prev = out[j] if j is not None else None
        if prev is not None and len(prev.qubits) == len(g.qubits):
            if g.kind in _SELF_INVERSE and same(prev, g):
                out[j] = None
                for q in g.qubits:
                    stacks[q].pop()
                continue
            if g.kind == prev.kind == "Rz" and not (g.phase.is_parametric and prev.phase.is_parametric):
                merged = prev.phase + g.phase
                if merged.is_zero():
                    out[j] = None
                    stacks[g.qubits[0]].pop()
                else:
                    out[j] = Rz(g.qubits[0], merged)
                continue
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)
    return Circuit(c.n_qubits, tuple(g for g in out if g is not None))


def random_clifford_t(n: int, target_depth: int, t_prob: float = 0.2, seed: int = 0) -> Circuit:
    """Random Clifford+T circuit grown gate by gate until its depth reaches ``target_depth``.

    Each placement is a T with probability ``t_prob``, otherwise uniform over
    {H, S, X, Z, CNOT, CZ}; targets are uniform qubits (or ordered pairs).
    With a single qubit the two-qubit kinds are excluded.
    """
    if n < 1:
        raise CircuitError("n must be >= 1")
    if target_depth < 0 or not 0.0 <= t_prob <= 1.0:
        raise CircuitError("need target_depth >= 0 and 0 <= t_prob <= 1")
    rng = np.random.default_rng(seed)
    choices = ("H", "S", "X", "Z", "CNOT", "CZ") if n > 1 else ("H", "S", "X", "Z")
    level = [0] * n
    gates = []
    current = 0
    while current < target_depth:
        if rng.random() < t_prob:
            kind = "T"
        else:
            kind = choices[rng.integers(len(choices))]
        if kind in TWO_QUBIT:
            a, b = rng.choice(n, size=2, replace=False)
            qs = (int(a), int(b))
        else:
            qs = (int(rng.integers(n)),)
        gates.append(Gate(kind, qs))
        layer = max(level[q] for q in qs) + 1
        for q in qs:
            level[q] = layer
        current = max(current, layer)
    return Circuit(n, tuple(gates))


# ---------------------------------------------------------------------------
# OpenQASM 2.0 subset

_QASM_GATES = {
    "h": "H", "x": "X", "y": "Y", "z": "Z", "s": "S", "sdg": "Sdg",
    "t": "T", "tdg": "Tdg", "rz": "Rz", "cx": "CNOT", "cz": "CZ",
}
_IGNORED = ("OPENQASM", "include", "measure", "barrier", "creg")
_ARG = re.compile(r"^(\w+)\s*\[\s*(\d+)\s*\]$")

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_angle(expr: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise CircuitError(f"unsupported angle expression {expr!r}")

    return ev(ast.parse(expr.strip(), mode="eval"))


def parse_qasm(text: str) -> Circuit:
    """Read the OpenQASM 2.0 subset used throughout: one ``qreg`` and the gates
    h x y z s sdg t tdg rz cx cz.  ``measure``, ``barrier``, ``creg`` and comments are dropped."""
    text = re.sub(r"//[^\n]*", "", text)
    n = None
    reg = None
    gates: list[Gate] = []
    for stmt in text.split(";"):
        stmt = " ".join(stmt.split())
        if not stmt:
            continue
        if stmt.startswith(_IGNORED):
            continue
        if stmt.startswith("qreg"):
            if n is not None:
                raise CircuitError("only one qreg is supported")
            m = re.match(r"^qreg\s+(\w+)\s*\[\s*(\d+)\s*\]$", stmt)
            if not m:
                raise CircuitError(f"malformed qreg: {stmt!r}")
            reg, n = m.group(1), int(m.group(2))
            continue
        m = re.match(r"^(\w+)\s*(?:\(([^)]*)\))?\s*(.*)$", stmt)
        name, angle, args = m.group(1), m.group(2), m.group(3)
        if name not in _QASM_GATES:
            raise CircuitError(f"unknown gate {name!r}")
        if n is None:
            raise CircuitError("gate before qreg declaration")
        qubits = []
        for arg in args.split(","):
            am = _ARG.match(arg.strip())
            if not am or am.group(1) != reg:
                raise CircuitError(f"bad qubit argument {arg!r}")
            q = int(am.group(2))
            if q >= n:
                raise CircuitError(f"qubit index {q} out of range for qreg of size {n}")
            qubits.append(q)
        kind = _QASM_GATES[name]
        phase = None
        if kind == "Rz":
            if angle is None:
                raise CircuitError("rz needs an angle")
            phase = Phase.from_radians(_eval_angle(angle))
        elif angle is not None:
            raise CircuitError(f"{name} takes no parameters")
        gates.append(Gate(kind, tuple(qubits), phase))
    if n is None:
        raise CircuitError("missing qreg declaration")
    return Circuit(n, tuple(gates))


def to_qasm(c: Circuit, params: Sequence[float] | None = None) -> str:
    inv = {v: k for k, v in _QASM_GATES.items()}
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.kind == "Rz":
            lines.append(f"rz({g.phase.radians(params)!r}) {args};")
        else:
            lines.append(f"{inv[g.kind]} {args};")
    return "\n".join(lines) + "\n"

