"""Brute-force linear map of a small diagram by tensor contraction."""
from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .diagram import HADAMARD, X, Z, ZXDiagram, ZXError

MAX_BOUNDARY_WIRES = 12

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_I = np.eye(2, dtype=complex)


def spider_tensor(kind: str, legs: int, angle: float) -> np.ndarray:
    """Z: |0..0><..| + e^{i a}|1..1>; X: the same in the +/- basis."""
    if kind == Z:
        t = np.zeros((2,) * legs, dtype=complex)
        if legs == 0:
            return np.array(1 + cmath.exp(1j * angle))
        t[(0,) * legs] = 1
        t[(1,) * legs] += cmath.exp(1j * angle)
        return t
    if kind == X:
        t = spider_tensor(Z, legs, angle)
        for ax in range(legs):
            t = np.moveaxis(np.tensordot(_H, t, axes=([1], [ax])), 0, ax)
        return t
    raise ZXError(f"not a spider kind: {kind}")


def _contract_pair(a, b):
    ta, la = a
    tb, lb = b
    shared = [l for l in la if l in lb]
    ia = [la.index(l) for l in shared]
    ib = [lb.index(l) for l in shared]
    t = np.tensordot(ta, tb, axes=(ia, ib))
    labels = [l for l in la if l not in shared] + [l for l in lb if l not in shared]
    return t, labels


def semantics(d: ZXDiagram, params: Sequence[float] | None = None) -> np.ndarray:
    """The 2^|outputs| x 2^|inputs| matrix of ``d`` (qubit 0 most significant)."""
    n_in, n_out = len(d.inputs), len(d.outputs)
    if n_in + n_out > MAX_BOUNDARY_WIRES:
        raise ZXError(f"semantics is capped at {MAX_BOUNDARY_WIRES} boundary wires, got {n_in + n_out}")
    counter = iter(range(10**9))
    ends: dict[int, list[int]] = {v: [] for v in d.vertices()}
    tensors = []
    for a, b, t in d.edge_list():
        la, lb = next(counter), next(counter)
        ends[a].append(la)
        ends[b].append(lb)
        tensors.append((_H if t == HADAMARD else _I, [la, lb]))
    open_labels = {}
    for v in d.vertices():
        if d.is_boundary(v):
            if len(ends[v]) != 1:
                raise ZXError(f"boundary {v} has degree {len(ends[v])}")
            open_labels[v] = ("open", v)
            tensors.append((_I, [ends[v][0], open_labels[v]]))
        else:
            angle = d.phase[v].radians(params)
            tensors.append((spider_tensor(d.kind[v], len(ends[v]), angle), ends[v]))

    # greedy: always contract the connected pair with the smallest result
    while True:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i][1])
            for j in range(i + 1, len(tensors)):
                lj = tensors[j][1]
                common = sum(1 for l in lj if l in li)
                if not common:
                    continue
                size = len(li) + len(lj) - 2 * common
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            break
        _, i, j = best
        merged = _contract_pair(tensors[i], tensors[j])
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)] + [merged]

    result, labels = np.array(1.0 + 0j), []
    for t, l in tensors:
        result = np.multiply.outer(result, t)
        labels += l
    order = [open_labels[v] for v in d.outputs] + [open_labels[v] for v in d.inputs]
    if sorted(map(str, order)) != sorted(map(str, labels)):
        raise ZXError("dangling labels after contraction")
    result = np.transpose(result, [labels.index(l) for l in order]) if order else result
    return np.asarray(result).reshape(1 << n_out, 1 << n_in)


def proportional(m1: np.ndarray, m2: np.ndarray, tol: float = 1e-9) -> bool:
    """True when m2 = c * m1 for some nonzero c (normalized Frobenius overlap >= 1 - tol)."""
    n1, n2 = np.linalg.norm(m1), np.linalg.norm(m2)
    if n1 < 1e-12 or n2 < 1e-12 or m1.shape != m2.shape:
        return False
    return abs(np.vdot(m1, m2)) / (n1 * n2) >= 1 - tol
