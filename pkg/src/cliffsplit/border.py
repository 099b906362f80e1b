"""Clifford border detection and circuit splitting.

The pipeline re-encodes the extracted circuit as spiders, pushes every
non-Clifford phase as far towards the outputs as plain-edge fusion allows,
cuts each wire before its first non-Clifford spider, and repairs the cut so no
two-qubit connection straddles it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import Circuit, H, adjoint, depth
from .zx import (B_OUT, HADAMARD, X, ZXDiagram, ZXError, circuit_to_diagram,
                 extract_circuit, read_segments, rewrite_color_change, to_graph_like, wire_paths)
from .zx.convert import cross_partner

LEFT = "left"
RIGHT = "right"
N_BUCKETS = 10


class BorderError(ZXError):
    pass


@dataclass
class Border:
    parsed: frozenset[int]
    cut: dict[int, int]
    paths: list[list[int]] = field(repr=False)

    def cut_index(self, q: int) -> int:
        return self.paths[q].index(self.cut[q])


@dataclass(frozen=True)
class SplitResult:
    clifford: Circuit
    non_clifford: Circuit
    side: str
    depth_reduction: float
    extracted: Circuit | None = None

    def recomposed(self) -> Circuit:
        """The circuit whose unitary should match the original (time order)."""
        if self.side == LEFT:
            return self.clifford + self.non_clifford
        return self.non_clifford + self.clifford

    def to_json(self) -> dict:
        return {"clifford": self.clifford.to_json(), "non_clifford": self.non_clifford.to_json(),
                "side": self.side, "depth_reduction": self.depth_reduction}

    @classmethod
    def from_json(cls, data: dict) -> SplitResult:
        return cls(Circuit.from_json(data["clifford"]), Circuit.from_json(data["non_clifford"]),
                   data["side"], float(data["depth_reduction"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _is_movable(d: ZXDiagram, v: int) -> bool:
    return d.is_spider(v) and not d.phase[v].is_clifford() and cross_partner(d, v) is None


def push_non_clifford(d: ZXDiagram) -> ZXDiagram:
    """Copy of ``d`` with X spiders colour-changed and non-Clifford phases pushed right.

    A non-Clifford spider v swaps places with the next spider w on its wire when
    they share a plain edge: the pair is fused, w keeps the multiple of pi/2 and
    v keeps the rest.  A vanishing remainder removes v.
    """
    g = d.copy()
    for v in g.spiders():
        if g.kind[v] == X:
            rewrite_color_change(g, v)
    paths = wire_paths(g)
    cap = 10 * g.num_vertices()
    moves = 0
    changed = True
    while changed:
        changed = False
        for path in paths:
            i = 1
            while i < len(path) - 1:
                v, w = path[i], path[i + 1]
                if (not _is_movable(g, v) or g.kind[w] == B_OUT or not g.is_spider(w)
                        or g.kind[w] != g.kind[v] or g.edge_counts(v, w) != (1, 0)
                        or (g.phase[v].is_parametric and g.phase[w].is_parametric)):
                    i += 1
                    continue
                moves += 1
                if moves > cap:
                    raise BorderError("non-Clifford pushing exceeded its iteration cap")
                a, b = path[i - 1], path[i + 2]
                e_av, e_wb = g.edge_type(a, v), g.edge_type(w, b)
                cliff, rest = (g.phase[v] + g.phase[w]).split_clifford()
                g.remove_edge(a, v)
                g.remove_edge(w, b)
                g.add_edge(a, w, e_av)
                g.set_phase(w, cliff)
                g.row[v], g.row[w] = g.row[w], g.row[v]
                if rest.is_zero():
                    g.remove_vertex(v)
                    g.add_edge(w, b, e_wb)
                    del path[i]
                else:
                    g.add_edge(v, b, e_wb)
                    g.set_phase(v, rest)
                    path[i], path[i + 1] = w, v
                    i += 1
                changed = True
    return g


def detect_border(d: ZXDiagram) -> Border:
    """Per-wire Clifford prefix, shrunk until no two-qubit connection crosses it."""
    paths = wire_paths(d)
    cut = []
    for path in paths:
        k = 0
        while k + 1 < len(path) and (d.kind[path[k + 1]] == B_OUT or d.phase[path[k + 1]].is_clifford()):
            k += 1
        cut.append(k)
    where = {v: (q, i) for q, path in enumerate(paths) for i, v in enumerate(path)}

    def parsed(v: int) -> bool:
        q, i = where[v]
        return i <= cut[q]

    changed = True
    while changed:
        changed = False
        for q, path in enumerate(paths):
            for i in range(1, cut[q] + 1):
                v = path[i]
                if not d.is_spider(v):
                    continue
                u = cross_partner(d, v)
                if u is not None and not parsed(u):
                    cut[q] = i - 1
                    changed = True
                    break
    members = frozenset(v for q, path in enumerate(paths) for v in path[:cut[q] + 1])
    return Border(members, {q: paths[q][cut[q]] for q in range(len(paths))}, paths)


def read_sides(d: ZXDiagram, border: Border) -> tuple[Circuit, Circuit]:
    """Gate lists of the parsed (Clifford) and remaining sides.  A Hadamard edge on the cut goes left."""
    n = len(border.paths)
    left, right, cut_h = [], [], []
    for q, path in enumerate(border.paths):
        k = border.cut_index(q)
        left.append(path[:k + 1])
        right.append(path[k + 1:])
        if k + 1 < len(path) and d.edge_type(path[k], path[k + 1]) == HADAMARD:
            cut_h.append(H(q))
    return read_segments(d, left, n).appended(*cut_h), read_segments(d, right, n)


def _split_left(c: Circuit) -> SplitResult:
    extracted = extract_circuit(to_graph_like(circuit_to_diagram(c)))
    pushed = push_non_clifford(circuit_to_diagram(extracted))
    border = detect_border(pushed)
    cliff, rest = read_sides(pushed, border)
    return SplitResult(cliff, rest, LEFT, reduction(cliff, extracted), extracted)


def reduction(clifford: Circuit, extracted: Circuit) -> float:
    de = depth(extracted)
    return 1.0 if de == 0 else depth(clifford) / de


def split(c: Circuit, side: str = LEFT) -> SplitResult:
    """Split ``c`` into a Clifford part and a non-Clifford part.

    Left: the Clifford part runs first, U = U_NC U_C.  Right: the Clifford part
    runs last, U = U_C U_NC; this is the left split of the adjoint, adjointed back.
    """
    side = side.lower()
    if side == LEFT:
        return _split_left(c)
    if side != RIGHT:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    r = _split_left(adjoint(c))
    return SplitResult(adjoint(r.clifford), adjoint(r.non_clifford), RIGHT, r.depth_reduction,
                       adjoint(r.extracted))


def bucket_of(clifford_depth: int, extracted_depth: int) -> int:
    """Decile of depth(clifford)/depth(extracted), computed exactly; 100% falls in the top bucket."""
    if extracted_depth == 0:
        return N_BUCKETS - 1
    return min(N_BUCKETS * clifford_depth // extracted_depth, N_BUCKETS - 1)


def depth_reduction_histogram(circuits: Iterable[Circuit], side: str = LEFT) -> list[int]:
    counts = [0] * N_BUCKETS
    for c in circuits:
        r = split(c, side)
        counts[bucket_of(depth(r.clifford), depth(r.extracted))] += 1
    return counts


def histogram_csv(counts: Sequence[int]) -> str:
    lines = ["bucket,low_pct,high_pct,count"]
    for b, k in enumerate(counts):
        lines.append(f"{b},{10 * b},{10 * (b + 1)},{k}")
    return "\n".join(lines) + "\n"
