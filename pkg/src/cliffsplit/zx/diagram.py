"""Open ZX-diagrams stored as multigraphs.

Edges between a pair of vertices are kept as a pair of counts ``[plain, hadamard]``
so that parallel edges and self-loops can exist transiently while rewriting and
be cleaned up afterwards.
"""
from __future__ import annotations

import json
from typing import Iterator

from ..circuit import ZERO, Phase

Z = "Z"
X = "X"
B_IN = "BoundaryIn"
B_OUT = "BoundaryOut"
VERTEX_KINDS = (Z, X, B_IN, B_OUT)

PLAIN = 0
HADAMARD = 1
EDGE_NAMES = {PLAIN: "Plain", HADAMARD: "Hadamard"}
EDGE_CODES = {v: k for k, v in EDGE_NAMES.items()}


class ZXError(ValueError):
    pass


def _key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


class ZXDiagram:
    def __init__(self):
        self.kind: dict[int, str] = {}
        self.phase: dict[int, Phase] = {}
        self.wire: dict[int, int] = {}
        self.row: dict[int, float] = {}
        self.edges: dict[tuple[int, int], list[int]] = {}
        self.adj: dict[int, set[int]] = {}
        self.inputs: list[int] = []
        self.outputs: list[int] = []
        self._next = 0

    # -- vertices ---------------------------------------------------------
    def add_vertex(self, kind: str, phase: Phase = ZERO, wire: int = -1, row: float = 0) -> int:
        if kind not in VERTEX_KINDS:
            raise ZXError(f"unknown vertex kind {kind!r}")
        if kind in (B_IN, B_OUT) and not phase.is_zero():
            raise ZXError("boundary vertices carry no phase")
        v = self._next
        self._next += 1
        self.kind[v] = kind
        self.phase[v] = phase.mod_2pi()
        self.wire[v] = wire
        self.row[v] = row
        self.adj[v] = set()
        return v

    def remove_vertex(self, v: int) -> None:
        for w in list(self.adj[v]):
            del self.edges[_key(v, w)]
            self.adj[w].discard(v)
        self.edges.pop((v, v), None)
        for table in (self.kind, self.phase, self.wire, self.row, self.adj):
            del table[v]
        if v in self.inputs:
            self.inputs.remove(v)
        if v in self.outputs:
            self.outputs.remove(v)

    def vertices(self) -> list[int]:
        return list(self.kind)

    def num_vertices(self) -> int:
        return len(self.kind)

    def is_boundary(self, v: int) -> bool:
        return self.kind[v] in (B_IN, B_OUT)

    def is_spider(self, v: int) -> bool:
        return self.kind[v] in (Z, X)

    def spiders(self) -> list[int]:
        return [v for v in self.kind if self.is_spider(v)]

    def set_phase(self, v: int, phase: Phase) -> None:
        self.phase[v] = phase.mod_2pi()

    def add_to_phase(self, v: int, phase: Phase) -> None:
        self.phase[v] = (self.phase[v] + phase).mod_2pi()

    # -- edges ------------------------------------------------------------
    def add_edge(self, a: int, b: int, etype: int = PLAIN, count: int = 1) -> None:
        if a not in self.kind or b not in self.kind:
            raise ZXError(f"edge endpoint missing: {a}-{b}")
        k = _key(a, b)
        slot = self.edges.setdefault(k, [0, 0])
        slot[etype] += count
        if a != b:
            self.adj[a].add(b)
            self.adj[b].add(a)

    def remove_edge(self, a: int, b: int, etype: int | None = None, count: int = 1) -> None:
        """Remove ``count`` edges of ``etype``, or every edge between a and b when etype is None."""
        k = _key(a, b)
        if k not in self.edges:
            raise ZXError(f"no edge {a}-{b}")
        slot = self.edges[k]
        if etype is None:
            slot[0] = slot[1] = 0
        else:
            if slot[etype] < count:
                raise ZXError(f"no {EDGE_NAMES[etype]} edge {a}-{b}")
            slot[etype] -= count
        if slot[0] == slot[1] == 0:
            del self.edges[k]
            if a != b:
                self.adj[a].discard(b)
                self.adj[b].discard(a)

    def edge_counts(self, a: int, b: int) -> tuple[int, int]:
        slot = self.edges.get(_key(a, b))
        return (0, 0) if slot is None else (slot[0], slot[1])

    def connected(self, a: int, b: int) -> bool:
        return _key(a, b) in self.edges

    def edge_type(self, a: int, b: int) -> int:
        """Type of the single edge between a and b; raises when there is not exactly one."""
        p, h = self.edge_counts(a, b)
        if p + h != 1:
            raise ZXError(f"expected exactly one edge {a}-{b}, found {p + h}")
        return PLAIN if p else HADAMARD

    def set_edge(self, a: int, b: int, etype: int) -> None:
        if self.connected(a, b):
            self.remove_edge(a, b)
        self.add_edge(a, b, etype)

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        d = sum(sum(self.edges[_key(v, w)]) for w in self.adj[v])
        loops = self.edges.get((v, v))
        return d + (2 * sum(loops) if loops else 0)

    def edge_list(self) -> Iterator[tuple[int, int, int]]:
        """Every edge once, as (a, b, type) with multiplicity."""
        for (a, b), (p, h) in sorted(self.edges.items()):
            for _ in range(p):
                yield a, b, PLAIN
            for _ in range(h):
                yield a, b, HADAMARD

    def num_edges(self) -> int:
        return sum(p + h for p, h in self.edges.values())

    def copy(self) -> ZXDiagram:
        d = ZXDiagram()
        d.kind = dict(self.kind)
        d.phase = dict(self.phase)
        d.wire = dict(self.wire)
        d.row = dict(self.row)
        d.edges = {k: list(v) for k, v in self.edges.items()}
        d.adj = {k: set(v) for k, v in self.adj.items()}
        d.inputs = list(self.inputs)
        d.outputs = list(self.outputs)
        d._next = self._next
        return d

    def check(self) -> None:
        """Raise if endpoints are missing, adjacency is stale or a boundary has degree != 1."""
        for (a, b) in self.edges:
            if a not in self.kind or b not in self.kind:
                raise ZXError(f"dangling edge {a}-{b}")
            if a != b and (b not in self.adj[a] or a not in self.adj[b]):
                raise ZXError(f"adjacency out of sync at {a}-{b}")
        for v in self.kind:
            if self.is_boundary(v) and self.degree(v) != 1:
                raise ZXError(f"boundary {v} has degree {self.degree(v)}")
        for v in self.inputs + self.outputs:
            if v not in self.kind:
                raise ZXError(f"boundary {v} missing")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "kind": self.kind[v], "phase": self.phase[v].to_json(),
                          "wire": self.wire[v], "row": self.row[v]} for v in sorted(self.kind)],
            "edges": [{"a": a, "b": b, "kind": EDGE_NAMES[t]} for a, b, t in self.edge_list()],
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_json(cls, data: dict) -> ZXDiagram:
        d = cls()
        remap = {}
        for vd in data["vertices"]:
            remap[vd["id"]] = d.add_vertex(vd["kind"], Phase.from_json(vd["phase"]),
                                           int(vd.get("wire", -1)), vd.get("row", 0))
        for ed in data["edges"]:
            d.add_edge(remap[ed["a"]], remap[ed["b"]], EDGE_CODES[ed["kind"]])
        d.inputs = [remap[v] for v in data["inputs"]]
        d.outputs = [remap[v] for v in data["outputs"]]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_dot(self) -> str:
        colors = {Z: "palegreen", X: "tomato", B_IN: "white", B_OUT: "white"}
        lines = ["graph zx {", "  rankdir=LR;"]
        for v in sorted(self.kind):
            label = "" if self.phase[v].is_zero() else str(self.phase[v])
            if self.is_boundary(v):
                label = ("in" if self.kind[v] == B_IN else "out") + str(self.wire[v])
            lines.append(f'  v{v} [label="{label}", style=filled, fillcolor={colors[self.kind[v]]}];')
        for a, b, t in self.edge_list():
            style = ' [style=dashed, color=blue]' if t == HADAMARD else ""
            lines.append(f"  v{a} -- v{b}{style};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"ZXDiagram({self.num_vertices()} vertices, {self.num_edges()} edges)"
