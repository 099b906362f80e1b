"""Circuit extraction from graph-like diagrams by frontier advancement and mod-2 Gaussian elimination.

Gates are peeled off the output side, so they are collected latest-first and
reversed at the end.  A row operation ``row[a] += row[b]`` on the frontier's
biadjacency matrix is realized by CNOT with control qubit a and target qubit b.  Adjacent
self-inverse pairs left behind by identity insertions are cancelled at the end.
"""
from __future__ import annotations

from ..circuit import CNOT, CZ, ZERO, Circuit, Gate, H, Rz, peephole
from .diagram import B_IN, HADAMARD, PLAIN, Z, ZXDiagram, ZXError
from .graphlike import graph_like_violations


class ExtractionError(ZXError):
    pass


def gauss_eliminate(rows: list[int], n_cols: int) -> tuple[list[int], list[tuple[int, int]]]:
    """Reduced row echelon form over GF(2) without row swaps.

    ``rows`` are bitmasks (bit c = column c).  Pivot columns are scanned left to
    right, taking the lowest-index unused row with a one.  Returns the reduced
    rows and the operations as (a, b) pairs meaning ``row[a] += row[b]``.
    """
    rows = list(rows)
    ops: list[tuple[int, int]] = []
    used: set[int] = set()
    for c in range(n_cols):
        bit = 1 << c
        piv = next((r for r in range(len(rows)) if r not in used and rows[r] & bit), None)
        if piv is None:
            continue
        used.add(piv)
        for r in range(len(rows)):
            if r != piv and rows[r] & bit:
                rows[r] ^= rows[piv]
                ops.append((r, piv))
    return rows, ops


def _swap(a: int, b: int) -> list[Gate]:
    return [CNOT(a, b), CNOT(b, a), CNOT(a, b)]


def extract_circuit(d: ZXDiagram, simplify: bool = True, stats: dict | None = None) -> Circuit:
    """Circuit over H, Rz, CZ and CNOT with the same linear map as the graph-like ``d``.

    ``stats``, when given, receives counts of eliminations, row operations and
    permutation CNOTs.  ``simplify=False`` skips the final peephole pass.
    """
    stats = {} if stats is None else stats
    stats.update(eliminations=0, row_ops=0, swap_cnots=0)
    problems = graph_like_violations(d)
    if problems:
        raise ZXError("diagram is not graph-like: " + "; ".join(problems[:3]))
    if len(d.inputs) != len(d.outputs):
        raise ExtractionError("inputs and outputs differ in number")
    g = d.copy()
    n = len(g.outputs)
    rev: list[Gate] = []

    # every input reaches its spider through a plain edge
    for i in g.inputs:
        (u,) = g.neighbors(i)
        if g.edge_type(i, u) == HADAMARD:
            g.remove_edge(i, u)
            p = g.add_vertex(Z, ZERO, wire=g.wire[i], row=g.row[i])
            g.add_edge(i, p, PLAIN)
            g.add_edge(p, u, HADAMARD)
    frontier: dict[int, int] = {}
    for q, o in enumerate(g.outputs):
        (u,) = g.neighbors(o)
        if g.edge_type(o, u) == HADAMARD:
            rev.append(H(q))
            g.set_edge(o, u, PLAIN)
        frontier[q] = u

    def columns(v: int, fset: set[int]) -> list[int]:
        return [w for w in g.neighbors(v) if g.kind[w] == Z and w not in fset]

    budget = 20 * (g.num_vertices() + n) + 100
    while True:
        budget -= 1
        if budget < 0:
            raise ExtractionError("extraction did not terminate")
        fset = set(frontier.values())
        # a frontier spider sitting on an input but still wired inwards gets the input moved back
        for q, v in frontier.items():
            ins = [w for w in g.neighbors(v) if g.kind[w] == B_IN]
            if ins and columns(v, fset):
                i = ins[0]
                g.remove_edge(i, v)
                p = g.add_vertex(Z, ZERO, wire=q, row=g.row[i])
                m = g.add_vertex(Z, ZERO, wire=q, row=g.row[i])
                g.add_edge(i, p, PLAIN)
                g.add_edge(p, m, HADAMARD)
                g.add_edge(m, v, HADAMARD)
        for q, v in sorted(frontier.items()):
            if not g.phase[v].is_zero():
                rev.append(Rz(q, g.phase[v]))
                g.set_phase(v, ZERO)
        qs = sorted(frontier)
        for x, qa in enumerate(qs):
            for qb in qs[x + 1:]:
                a, b = frontier[qa], frontier[qb]
                if g.connected(a, b):
                    if g.edge_type(a, b) != HADAMARD:
                        raise ExtractionError(f"plain edge between frontier spiders {a} and {b}")
                    rev.append(CZ(qa, qb))
                    g.remove_edge(a, b)
        cols = sorted({w for v in frontier.values() for w in columns(v, fset)})
        if not cols:
            break
        if not _advance(g, frontier, rev):
            index = {w: k for k, w in enumerate(cols)}
            masks = []
            for q in qs:
                m = 0
                for w in columns(frontier[q], fset):
                    m |= 1 << index[w]
                masks.append(m)
            reduced, ops = gauss_eliminate(masks, len(cols))
            stats["eliminations"] += 1
            stats["row_ops"] += len(ops)
            for a, b in ops:
                rev.append(CNOT(qs[a], qs[b]))
            for r, q in enumerate(qs):
                v = frontier[q]
                for k, w in enumerate(cols):
                    want = (reduced[r] >> k) & 1
                    if want and not g.connected(v, w):
                        g.add_edge(v, w, HADAMARD)
                    elif not want and g.connected(v, w):
                        g.remove_edge(v, w)
            if not _advance(g, frontier, rev):
                raise ExtractionError("frontier cannot advance after elimination")

    # what is left is a permutation from inputs to outputs
    perm: dict[int, int] = {}
    fset = set(frontier.values())
    for q, v in frontier.items():
        ins = [w for w in g.neighbors(v) if g.kind[w] == B_IN]
        if len(ins) != 1 or len(g.neighbors(v)) != 2:
            raise ExtractionError(f"frontier spider on qubit {q} is not connected to exactly one input")
        perm[g.inputs.index(ins[0])] = q
    if any(v not in fset for v in g.spiders()):
        raise ExtractionError("spiders remain that are not reachable from the outputs")
    swaps: list[Gate] = []
    where = list(range(n))  # where[pos] = input whose state sits at pos
    source = {q: k for k, q in perm.items()}
    for q in range(n):
        j = where.index(source[q])
        if j != q:
            swaps += _swap(j, q)
            where[j], where[q] = where[q], where[j]
    stats["swap_cnots"] = len(swaps)
    out = Circuit(n, tuple(swaps + rev[::-1]))
    return peephole(out) if simplify else out


def _advance(g: ZXDiagram, frontier: dict[int, int], rev: list[Gate]) -> bool:
    """Move the frontier past every spider that is the unique inner neighbour of a frontier spider."""
    fset = set(frontier.values())
    taken: set[int] = set()
    moved = False
    for q in sorted(frontier):
        v = frontier[q]
        o = g.outputs[q]
        nbrs = g.neighbors(v)
        if len(nbrs) != 2 or o not in nbrs:
            continue
        (w,) = nbrs - {o}
        if g.kind[w] != Z or w in fset or w in taken:
            continue
        taken.add(w)
        rev.append(H(q))
        g.remove_vertex(v)
        g.add_edge(w, o, PLAIN)
        frontier[q] = w
        moved = True
    return moved
