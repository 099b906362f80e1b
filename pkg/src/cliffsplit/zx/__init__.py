"""ZX-diagrams: encoding, rewriting, graph-like normalization, extraction and a matrix oracle."""
from .convert import circuit_to_diagram, diagram_to_circuit, phase_gates, read_segments, wire_paths
from .diagram import B_IN, B_OUT, HADAMARD, PLAIN, X, Z, ZXDiagram, ZXError
from .extract import ExtractionError, extract_circuit, gauss_eliminate
from .graphlike import graph_like_violations, is_graph_like, to_graph_like
from .rules import normalize_edges, rewrite_color_change, rewrite_fuse
from .semantics import proportional, semantics

__all__ = [
    "B_IN", "B_OUT", "HADAMARD", "PLAIN", "X", "Z", "ZXDiagram", "ZXError", "ExtractionError",
    "circuit_to_diagram", "diagram_to_circuit", "phase_gates", "read_segments", "wire_paths",
    "extract_circuit", "gauss_eliminate", "graph_like_violations", "is_graph_like", "to_graph_like",
    "normalize_edges", "rewrite_color_change", "rewrite_fuse", "proportional", "semantics",
]
