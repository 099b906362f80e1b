"""The rewrites used by the pipeline: spider fusion, colour change and edge cleanup.

Rewrites mutate the diagram in place and return it.  Global scalars are dropped.
"""
from __future__ import annotations

from ..circuit import CircuitError, Phase
from .diagram import HADAMARD, PLAIN, X, Z, ZXDiagram, ZXError

_PI = Phase(1)


def rewrite_fuse(d: ZXDiagram, v1: int, v2: int) -> ZXDiagram:
    """Merge v2 into v1; they must be same-coloured spiders joined by a plain edge."""
    if v1 == v2 or not (d.is_spider(v1) and d.is_spider(v2)):
        raise ZXError("fusion needs two distinct spiders")
    if d.kind[v1] != d.kind[v2]:
        raise ZXError("fusion needs spiders of the same colour")
    p, h = d.edge_counts(v1, v2)
    if p == 0:
        raise ZXError(f"spiders {v1} and {v2} share no plain edge")
    try:
        phase = d.phase[v1] + d.phase[v2]
    except CircuitError as exc:
        raise ZXError(f"cannot fuse {v1} and {v2}: {exc}") from None
    # remaining parallel edges become self-loops: plain ones vanish, each Hadamard adds pi
    if h % 2:
        phase = phase + _PI
    d.remove_edge(v1, v2)
    for w in list(d.neighbors(v2)):
        wp, wh = d.edge_counts(v2, w)
        if wp:
            d.add_edge(v1, w, PLAIN, wp)
        if wh:
            d.add_edge(v1, w, HADAMARD, wh)
    lp, lh = d.edge_counts(v2, v2)
    if lh % 2:
        phase = phase + _PI
    d.remove_vertex(v2)
    d.set_phase(v1, phase)
    return d


def rewrite_color_change(d: ZXDiagram, v: int) -> ZXDiagram:
    """Turn an X spider into a Z spider, toggling every incident edge between plain and Hadamard."""
    if d.kind[v] != X:
        raise ZXError(f"vertex {v} is not an X spider")
    d.kind[v] = Z
    for w in d.neighbors(v):
        slot = d.edges[(v, w) if v <= w else (w, v)]
        slot[0], slot[1] = slot[1], slot[0]
    return d


def remove_self_loops(d: ZXDiagram, v: int) -> bool:
    p, h = d.edge_counts(v, v)
    if p + h == 0:
        return False
    d.remove_edge(v, v)
    if h % 2:
        d.add_to_phase(v, _PI)
    return True


def cancel_parallel(d: ZXDiagram, a: int, b: int) -> bool:
    """Hopf rule between same-coloured spiders: parallel Hadamard edges cancel in pairs."""
    if a == b or not (d.is_spider(a) and d.is_spider(b)) or d.kind[a] != d.kind[b]:
        return False
    p, h = d.edge_counts(a, b)
    if h < 2:
        return False
    d.remove_edge(a, b, HADAMARD, h - h % 2)
    return True


def _elide(d: ZXDiagram, v: int) -> bool:
    """Remove a phase-free degree-2 spider, joining its two neighbours directly."""
    if not d.is_spider(v) or not d.phase[v].is_zero() or d.degree(v) != 2 or len(d.neighbors(v)) != 2:
        return False
    a, b = sorted(d.neighbors(v))
    if d.is_boundary(a) and d.is_boundary(b):
        return False
    ta, tb = d.edge_type(v, a), d.edge_type(v, b)
    d.remove_vertex(v)
    d.add_edge(a, b, ta ^ tb)
    return True


def normalize_edges(d: ZXDiagram) -> ZXDiagram:
    """Self-loop removal, Hadamard-pair cancellation and identity elision, to a fixpoint."""
    changed = True
    while changed:
        changed = False
        for v in d.spiders():
            changed |= remove_self_loops(d, v)
        for (a, b) in list(d.edges):
            if a in d.kind and b in d.kind:
                changed |= cancel_parallel(d, a, b)
        for v in d.spiders():
            if v in d.kind and _elide(d, v):
                changed = True
    return d
