"""Gate-level encoding into spiders and the reverse readout of circuit-like diagrams."""
from __future__ import annotations

from fractions import Fraction

from ..circuit import KIND_PHASE, Circuit, Gate, Phase, Rz
from .diagram import B_IN, B_OUT, HADAMARD, PLAIN, X, Z, ZXDiagram, ZXError

_PI = Phase(1)


def circuit_to_diagram(c: Circuit) -> ZXDiagram:
    d = ZXDiagram()
    n = c.n_qubits
    d.inputs = [d.add_vertex(B_IN, wire=q, row=0) for q in range(n)]
    last = list(d.inputs)
    pending = [PLAIN] * n
    row = [0] * n

    def attach(q: int, kind: str, phase: Phase, r: int) -> int:
        v = d.add_vertex(kind, phase, wire=q, row=r)
        d.add_edge(last[q], v, pending[q])
        pending[q] = PLAIN
        last[q] = v
        row[q] = r
        return v

    for g in c.gates:
        k = g.kind
        if k == "H":
            pending[g.qubits[0]] ^= 1
        elif k in KIND_PHASE or k == "Rz":
            q = g.qubits[0]
            attach(q, Z, g.phase if k == "Rz" else KIND_PHASE[k], row[q] + 1)
        elif k == "X":
            q = g.qubits[0]
            attach(q, X, _PI, row[q] + 1)
        elif k == "Y":
            # Y = i X Z: Z first in time, then X
            q = g.qubits[0]
            attach(q, Z, _PI, row[q] + 1)
            attach(q, X, _PI, row[q] + 1)
        elif k in ("CNOT", "CZ"):
            a, b = g.qubits
            r = max(row[a], row[b]) + 1
            va = attach(a, Z, Phase(0), r)
            vb = attach(b, X if k == "CNOT" else Z, Phase(0), r)
            d.add_edge(va, vb, PLAIN if k == "CNOT" else HADAMARD)
        else:  # pragma: no cover
            raise ZXError(f"cannot encode {g}")
    top = max(row, default=0) + 1
    for q in range(n):
        o = d.add_vertex(B_OUT, wire=q, row=top)
        d.add_edge(last[q], o, pending[q])
        d.outputs.append(o)
    return d


_NAMED = {Fraction(0): None, Fraction(1, 2): "S", Fraction(1): "Z", Fraction(3, 2): "Sdg",
          Fraction(1, 4): "T", Fraction(7, 4): "Tdg"}


def phase_gates(q: int, phase: Phase) -> list[Gate]:
    """The single-qubit gate(s) realizing a Z-phase, preferring named gates."""
    if not phase.is_parametric:
        v = phase.value % 2
        if v in _NAMED:
            name = _NAMED[v]
            return [] if name is None else [Gate(name, (q,))]
    return [Rz(q, phase)]


def wire_paths(d: ZXDiagram) -> list[list[int]]:
    """For each qubit, the vertices along its wire from input to output.

    Wire edges join vertices carrying the same ``wire`` attribute; every other
    edge is a two-qubit connection.
    """
    paths = []
    for q, start in enumerate(d.inputs):
        path, prev, cur = [start], None, start
        while d.kind[cur] != B_OUT:
            nxt = [w for w in d.neighbors(cur) if w != prev and d.wire[w] == d.wire[cur]]
            if len(nxt) != 1:
                raise ZXError(f"wire {q} is not a simple path at vertex {cur}")
            prev, cur = cur, nxt[0]
            path.append(cur)
            if len(path) > d.num_vertices():
                raise ZXError(f"wire {q} loops")
        if cur != d.outputs[q]:
            raise ZXError(f"wire {q} ends at the wrong output")
        paths.append(path)
    return paths


def cross_partner(d: ZXDiagram, v: int) -> int | None:
    others = [w for w in d.neighbors(v) if d.wire[w] != d.wire[v]]
    if len(others) > 1:
        raise ZXError(f"vertex {v} joins more than two wires")
    return others[0] if others else None


def _spider_gates(d: ZXDiagram, v: int) -> list[Gate]:
    q = d.wire[v]
    gates = phase_gates(q, d.phase[v])
    if d.kind[v] == X and gates:
        gates = [Gate("H", (q,))] + gates + [Gate("H", (q,))]
    return gates


def _pair_gates(d: ZXDiagram, u: int, v: int) -> list[Gate]:
    a, b = d.wire[u], d.wire[v]
    t = d.edge_type(u, v)
    ku, kv = d.kind[u], d.kind[v]
    if ku == kv == Z and t == HADAMARD:
        return [Gate("CZ", (a, b))]
    if ku == Z and kv == X and t == PLAIN:
        return [Gate("CNOT", (a, b))]
    if ku == X and kv == Z and t == PLAIN:
        return [Gate("CNOT", (b, a))]
    if ku == kv == X and t == HADAMARD:
        return [Gate("H", (a,)), Gate("H", (b,)), Gate("CZ", (a, b)), Gate("H", (a,)), Gate("H", (b,))]
    raise ZXError(f"connection {u}-{v} is not a recognised two-qubit gate")


def read_segments(d: ZXDiagram, segments: list[list[int]], n_qubits: int) -> Circuit:
    """Read gates off per-wire vertex runs.

    ``segments[q]`` is a consecutive run of a wire path; gates come from the
    spiders in the run and from the edges between consecutive entries.  Edge
    types between entries, including any leading boundary, are read as H gates.
    Two-qubit connections must have both endpoints inside the segments.
    """
    members = {v for seg in segments for v in seg}
    tokens: list[list] = []
    for q, seg in enumerate(segments):
        toks = []
        for i, v in enumerate(seg):
            if i > 0 and d.edge_type(seg[i - 1], v) == HADAMARD:
                toks.append(("gate", Gate("H", (q,))))
            if d.is_spider(v):
                u = cross_partner(d, v)
                if u is not None:
                    if u not in members:
                        raise ZXError(f"connection {v}-{u} crosses the segment boundary")
                    # spider phase first, then the connection: both commute on this spider
                    toks += [("gate", g) for g in _spider_gates(d, v)]
                    toks.append(("pair", v, u))
                else:
                    toks += [("gate", g) for g in _spider_gates(d, v)]
        tokens.append(toks)
    gates: list[Gate] = []
    pos = [0] * len(tokens)
    while True:
        progressed = False
        for q, toks in enumerate(tokens):
            while pos[q] < len(toks) and toks[pos[q]][0] == "gate":
                gates.append(toks[pos[q]][1])
                pos[q] += 1
                progressed = True
        for q, toks in enumerate(tokens):
            if pos[q] < len(toks) and toks[pos[q]][0] == "pair":
                _, v, u = toks[pos[q]]
                p = d.wire[u]
                if pos[p] < len(tokens[p]) and tokens[p][pos[p]][0] == "pair" and tokens[p][pos[p]][1] == u:
                    gates += _pair_gates(d, v, u)
                    pos[q] += 1
                    pos[p] += 1
                    progressed = True
        if all(pos[q] == len(t) for q, t in enumerate(tokens)):
            break
        if not progressed:
            raise ZXError("two-qubit connections are not in a consistent order")
    return Circuit(n_qubits, tuple(gates))


def diagram_to_circuit(d: ZXDiagram) -> Circuit:
    """Read a circuit-like diagram (every wire a simple path) back into gates."""
    return read_segments(d, wire_paths(d), len(d.inputs))
