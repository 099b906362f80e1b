"""Gradient descent on 0.5 ZZ - 0.3 XI + 0.2 IX over a batch of random 2-qubit ansatzes.

Runs each ansatz on every backend and prints one row per (ansatz, backend).

    python3 scripts/vqe_demo.py --count 20
"""
import argparse
import sys

import numpy as np

from cliffsplit import Ansatz, VqeConfig, descend, random_clifford_t
from cliffsplit.vqe import BACKENDS, acceptance_hamiltonian, ground_energy


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--step", type=float, default=0.2)
    ap.add_argument("--iters", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    ham = acceptance_hamiltonian()
    e0 = ground_energy(ham)
    cfg = VqeConfig(step_size=args.step, max_iters=args.iters, tol=1e-12)
    rng = np.random.default_rng(args.seed)
    print("ansatz,depth,params,backend,iters,final_loss,gap")
    best = np.inf
    for i in range(args.count):
        d = int(rng.integers(20, 101))
        ansatz, init = Ansatz.from_circuit(random_clifford_t(2, d, 0.2, int(rng.integers(2**31))))
        if ansatz.parameter_count == 0:
            continue
        for backend in BACKENDS:
            trace = descend(ansatz, ham, cfg, init, backend)
            best = min(best, trace.final_loss)
            print(f"{i},{d},{ansatz.parameter_count},{backend},{len(trace.losses) - 1},"
                  f"{trace.final_loss:.12f},{trace.final_loss - e0:.3e}")
    print(f"# E0={e0:.12f} best={best:.12f}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
