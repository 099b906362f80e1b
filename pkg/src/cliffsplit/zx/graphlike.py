"""Normalization into graph-like form and a checker for its four conditions."""
from __future__ import annotations

from ..circuit import ZERO
from .diagram import HADAMARD, PLAIN, X, Z, ZXDiagram
from .rules import cancel_parallel, remove_self_loops, rewrite_color_change, rewrite_fuse


def graph_like_violations(d: ZXDiagram) -> list[str]:
    problems = []
    for v in d.vertices():
        k = d.kind[v]
        if k == X:
            problems.append(f"vertex {v} is an X spider")
        if d.edge_counts(v, v) != (0, 0):
            problems.append(f"vertex {v} has a self-loop")
    for (a, b), (p, h) in d.edges.items():
        if a == b:
            continue
        if p + h > 1:
            problems.append(f"parallel edges between {a} and {b}")
        if d.is_spider(a) and d.is_spider(b) and p:
            problems.append(f"plain edge between spiders {a} and {b}")
    for v in d.vertices():
        if d.is_boundary(v):
            nbrs = list(d.neighbors(v))
            if d.degree(v) != 1 or len(nbrs) != 1:
                problems.append(f"boundary {v} does not have degree 1")
            elif d.kind[nbrs[0]] != Z:
                problems.append(f"boundary {v} is not attached to a Z spider")
        elif sum(1 for w in d.neighbors(v) if d.is_boundary(w)) > 1:
            problems.append(f"spider {v} touches more than one boundary")
    return problems


def is_graph_like(d: ZXDiagram) -> bool:
    return not graph_like_violations(d)


def _split_plain(d: ZXDiagram, a: int, b: int) -> None:
    """Replace one plain edge a-b by a-H-z-H-b with a fresh phase-free spider z."""
    d.remove_edge(a, b, PLAIN)
    z = d.add_vertex(Z, ZERO, wire=d.wire[a], row=(d.row[a] + d.row[b]) / 2)
    d.add_edge(a, z, HADAMARD)
    d.add_edge(z, b, HADAMARD)


def _fix_boundary(d: ZXDiagram, b: int, v: int) -> None:
    """Route boundary b to v through fresh spiders so that b owns its own spider."""
    t = d.edge_type(b, v)
    d.remove_edge(b, v)
    w, r = d.wire[b], d.row[b]
    p = d.add_vertex(Z, ZERO, wire=w, row=r)
    d.add_edge(b, p, PLAIN)
    if t == HADAMARD and not d.is_boundary(v):
        d.add_edge(p, v, HADAMARD)
        return
    m = d.add_vertex(Z, ZERO, wire=w, row=r)
    d.add_edge(p, m, HADAMARD)
    d.add_edge(m, v, t ^ 1 if d.is_boundary(v) else HADAMARD)


def to_graph_like(d: ZXDiagram) -> ZXDiagram:
    """Return a graph-like copy of ``d`` with the same linear map up to scalar.

    Two parametric spiders joined by a plain edge cannot be fused since their
    phases would share one angle; the edge is instead rewritten as H-Z(0)-H.
    """
    g = d.copy()
    for v in g.spiders():
        if g.kind[v] == X:
            rewrite_color_change(g, v)
    changed = True
    while changed:
        changed = False
        for (a, b), (p, h) in list(g.edges.items()):
            if a == b or a not in g.kind or b not in g.kind or p == 0:
                continue
            if not (g.is_spider(a) and g.is_spider(b)):
                continue
            if g.phase[a].is_parametric and g.phase[b].is_parametric:
                _split_plain(g, a, b)
            else:
                rewrite_fuse(g, a, b)
            changed = True
    for v in g.spiders():
        remove_self_loops(g, v)
    for (a, b) in list(g.edges):
        cancel_parallel(g, a, b)
    for v in g.spiders():
        if not g.neighbors(v) and g.degree(v) == 0:
            g.remove_vertex(v)
    for b in g.inputs + g.outputs:
        (v,) = g.neighbors(b)
        if g.is_boundary(v):
            _fix_boundary(g, b, v)
        elif sum(1 for w in g.neighbors(v) if g.is_boundary(w)) > 1:
            _fix_boundary(g, b, v)
    return g
