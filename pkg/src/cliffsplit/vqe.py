"""Plain gradient-descent VQE with three ways of evaluating the same loss.

dense
    evolve |0> through the whole ansatz.
split_left
    split the ansatz as U_NC U_C, build the Clifford state U_C|0> once from its
    tableau, then evolve it through U_NC only.
absorb_right
    split as U_C U_NC, conjugate the observable through the Clifford part
    classically and evaluate it on U_NC|0>.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .circuit import Circuit, Phase, Rz
from .densesim import FusedCircuit, expectation, zero_state
from .pauli import PauliSum
from .stabilizer import StabilizerError, conjugate_paulis, run_tableau, tableau_statevector

DENSE = "dense"
SPLIT_LEFT = "split_left"
ABSORB_RIGHT = "absorb_right"
BACKENDS = (DENSE, SPLIT_LEFT, ABSORB_RIGHT)
PARAMETER_SHIFT = "parameter_shift"
FINITE_DIFFERENCE = "finite_difference"

_HALF_PI = Phase(1, 2)


class VqeError(ValueError):
    pass


@dataclass(frozen=True)
class Ansatz:
    template: Circuit
    parameter_count: int

    def __post_init__(self):
        for p in self.template.parameters():
            if not 0 <= p < self.parameter_count:
                raise VqeError(f"parameter id {p} outside 0..{self.parameter_count - 1}")

    @classmethod
    def from_circuit(cls, c: Circuit) -> tuple[Ansatz, np.ndarray]:
        """Replace every non-Clifford constant rotation by a fresh Rz parameter.

        Returns the ansatz and the parameter values that reproduce ``c``.
        """
        gates, init = [], []
        k = len(c.parameters())
        for g in c.gates:
            if g.kind in ("T", "Tdg") or (g.kind == "Rz" and not g.phase.is_parametric and not g.phase.is_clifford()):
                angle = g.phase.radians() if g.kind == "Rz" else (math.pi / 4 if g.kind == "T" else -math.pi / 4)
                gates.append(Rz(g.qubits[0], Phase.parameter(k)))
                init.append(angle)
                k += 1
            else:
                gates.append(g)
        return cls(Circuit(c.n_qubits, tuple(gates)), k), np.array(init, dtype=float)

    def bind(self, params: Sequence[float]) -> Circuit:
        self.check(params)
        out = []
        for g in self.template.gates:
            if g.kind == "Rz" and g.phase.is_parametric:
                out.append(Rz(g.qubits[0], Phase.from_radians(g.phase.radians(params))))
            else:
                out.append(g)
        return Circuit(self.template.n_qubits, tuple(out))

    def check(self, params: Sequence[float]) -> None:
        if len(params) != self.parameter_count:
            raise VqeError(f"expected {self.parameter_count} parameters, got {len(params)}")


@dataclass(frozen=True)
class VqeConfig:
    step_size: float = 0.1
    max_iters: int = 200
    tol: float = 1e-10
    gradient: str = PARAMETER_SHIFT
    h: float = 1e-5

    def __post_init__(self):
        if not self.step_size > 0:
            raise VqeError("step_size must be > 0")
        if self.max_iters < 1:
            raise VqeError("max_iters must be >= 1")
        if self.tol < 0:
            raise VqeError("tol must be >= 0")
        if self.gradient not in (PARAMETER_SHIFT, FINITE_DIFFERENCE):
            raise VqeError(f"unknown gradient method {self.gradient!r}")
        if not self.h > 0:
            raise VqeError("h must be > 0")

    @classmethod
    def from_json(cls, data: dict) -> VqeConfig:
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise VqeError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class VqeTrace:
    params: list[np.ndarray] = field(default_factory=list)
    losses: list[float] = field(default_factory=list)
    converged: bool = False

    @property
    def final_params(self) -> np.ndarray:
        return self.params[-1]

    @property
    def final_loss(self) -> float:
        return self.losses[-1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        k = len(self.params[0]) if self.params else 0
        buf.write(",".join(["iter", "loss"] + [f"theta{i}" for i in range(k)]) + "\n")
        for i, (p, f) in enumerate(zip(self.params, self.losses)):
            buf.write(",".join([str(i), repr(float(f))] + [repr(float(x)) for x in p]) + "\n")
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"losses": [float(f) for f in self.losses],
                "params": [[float(x) for x in p] for p in self.params],
                "converged": self.converged}


def absorb_clifford(observable: PauliSum, u_c: Circuit) -> PauliSum:
    """A' = U_C^dagger A U_C, each term conjugated by a symplectic update."""
    from .circuit import adjoint

    if not u_c.is_clifford():
        raise StabilizerError("absorb_clifford needs a Clifford circuit")
    if u_c.n_qubits != observable.n:
        raise VqeError("observable and circuit sizes differ")
    if not observable.terms:
        return observable
    images = conjugate_paulis([p for _, p in observable.terms], adjoint(u_c))
    return PauliSum(((c, q) for (c, _), q in zip(observable.terms, images)), n=observable.n)


class Evaluator:
    """Loss and gradient of one (ansatz, observable, backend) triple.

    All backend preprocessing (splitting, Clifford state, absorbed observable)
    happens once here and is reused by every evaluation.
    """

    def __init__(self, ansatz: Ansatz, observable: PauliSum, backend: str = DENSE):
        from .border import split

        if backend not in BACKENDS:
            raise VqeError(f"unknown backend {backend!r}")
        if observable.n != ansatz.template.n_qubits:
            raise VqeError("observable and ansatz sizes differ")
        self.ansatz = ansatz
        self.backend = backend
        n = ansatz.template.n_qubits
        if backend == DENSE:
            self.circuit, self.initial, self.observable = ansatz.template, zero_state(n), observable
        elif backend == SPLIT_LEFT:
            parts = split(ansatz.template, "left")
            self.circuit = parts.non_clifford
            self.initial = tableau_statevector(run_tableau(parts.clifford))
            self.observable = observable
        else:
            parts = split(ansatz.template, "right")
            self.circuit, self.initial = parts.non_clifford, zero_state(n)
            self.observable = absorb_clifford(observable, parts.clifford)
        self._shifted = self._shift_table()

    def _shift_table(self) -> list[tuple[int, int, FusedCircuit, FusedCircuit]]:
        """(param, coeff, program with that occurrence at +pi/2, ... at -pi/2) per parametric gate."""
        self._program = FusedCircuit(self.circuit)
        table = []
        for i, g in enumerate(self.circuit.gates):
            if g.kind == "Rz" and g.phase.is_parametric:
                plus = self._program.replaced(i, Rz(g.qubits[0], g.phase + _HALF_PI))
                minus = self._program.replaced(i, Rz(g.qubits[0], g.phase - _HALF_PI))
                table.append((g.phase.param, g.phase.coeff, plus, minus))
        return table

    def _value(self, program: FusedCircuit, params: Sequence[float]) -> float:
        return expectation(program.evolve(self.initial, params), self.observable)

    def loss(self, params: Sequence[float]) -> float:
        self.ansatz.check(params)
        return self._value(self._program, params)

    def gradient(self, params: Sequence[float], method: str = PARAMETER_SHIFT, h: float = 1e-5) -> np.ndarray:
        self.ansatz.check(params)
        params = np.asarray(params, dtype=float)
        grad = np.zeros(self.ansatz.parameter_count)
        if method == PARAMETER_SHIFT:
            for k, coeff, plus, minus in self._shifted:
                grad[k] += coeff * 0.5 * (self._value(plus, params) - self._value(minus, params))
        elif method == FINITE_DIFFERENCE:
            for k in range(len(params)):
                e = np.zeros_like(params)
                e[k] = h
                grad[k] = (self.loss(params + e) - self.loss(params - e)) / (2 * h)
        else:
            raise VqeError(f"unknown gradient method {method!r}")
        return grad


def loss(ansatz: Ansatz, params: Sequence[float], observable: PauliSum, backend: str = DENSE) -> float:
    return Evaluator(ansatz, observable, backend).loss(params)


def gradient(ansatz: Ansatz, params: Sequence[float], observable: PauliSum, backend: str = DENSE,
             method: str = PARAMETER_SHIFT, h: float = 1e-5) -> np.ndarray:
    return Evaluator(ansatz, observable, backend).gradient(params, method, h)


def descend(ansatz: Ansatz, observable: PauliSum, config: VqeConfig, init_params: Sequence[float],
            backend: str = DENSE, evaluator: Evaluator | None = None) -> VqeTrace:
    """theta <- theta - s * grad f(theta) until |delta f| < tol or max_iters updates."""
    ev = evaluator or Evaluator(ansatz, observable, backend)
    theta = np.array(init_params, dtype=float)
    trace = VqeTrace()
    f = ev.loss(theta)
    trace.params.append(theta.copy())
    trace.losses.append(f)
    for _ in range(config.max_iters):
        theta = theta - config.step_size * ev.gradient(theta, config.gradient, config.h)
        f_new = ev.loss(theta)
        trace.params.append(theta.copy())
        trace.losses.append(f_new)
        if abs(f_new - f) < config.tol:
            trace.converged = True
            break
        f = f_new
    return trace


def ground_energy(observable: PauliSum) -> float:
    """Smallest eigenvalue by exact diagonalization."""
    return float(np.linalg.eigvalsh(observable.to_matrix())[0])


def acceptance_hamiltonian() -> PauliSum:
    return PauliSum([(0.5, "ZZ"), (-0.3, "XI"), (0.2, "IX")])


def config_from_json_text(text: str) -> VqeConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise VqeError(f"config is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise VqeError("config must be a JSON object")
    try:
        return VqeConfig.from_json(data)
    except TypeError as exc:
        raise VqeError(str(exc)) from None


__all__ = [
    "Ansatz", "VqeConfig", "VqeTrace", "VqeError", "Evaluator", "absorb_clifford", "loss", "gradient",
    "descend", "ground_energy", "acceptance_hamiltonian", "config_from_json_text",
    "DENSE", "SPLIT_LEFT", "ABSORB_RIGHT", "BACKENDS", "PARAMETER_SHIFT", "FINITE_DIFFERENCE",
]
