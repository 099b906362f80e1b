"""Split Clifford+T circuits at their Clifford border and simulate the two halves separately."""
from .border import LEFT, RIGHT, SplitResult, depth_reduction_histogram, split
from .circuit import Circuit, Gate, Phase, adjoint, depth, parse_qasm, random_clifford_t, to_qasm
from .densesim import composite_simulate, simulate, unitary
from .pauli import PauliString, PauliSum
from .projector import build_projector, distribution_via_projector
from .stabilizer import Tableau, run_tableau, stabilizer_statevector, tableau_statevector
from .vqe import Ansatz, VqeConfig, absorb_clifford, descend

__version__ = "0.1.0"

__all__ = [
    "LEFT", "RIGHT", "SplitResult", "split", "depth_reduction_histogram",
    "Circuit", "Gate", "Phase", "adjoint", "depth", "parse_qasm", "random_clifford_t", "to_qasm",
    "simulate", "composite_simulate", "unitary", "PauliString", "PauliSum",
    "build_projector", "distribution_via_projector",
    "Tableau", "run_tableau", "stabilizer_statevector", "tableau_statevector",
    "Ansatz", "VqeConfig", "absorb_clifford", "descend",
]
