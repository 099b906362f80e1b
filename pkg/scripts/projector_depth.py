"""Projector circuit depth for random stabilizer states against the [3, 3+n^2] bounds.

    python3 scripts/projector_depth.py --max-n 6 --per-n 50
"""
import argparse
import sys

import numpy as np

from cliffsplit import build_projector, random_clifford_t, run_tableau
from cliffsplit.projector import projector_depth_bounds
from cliffsplit.stabilizer import generators


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--per-n", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print("n,min_depth,mean_depth,max_depth,lower,upper,mean_controlled_ops")
    ok = True
    for n in range(1, args.max_n + 1):
        depths, ops = [], []
        for _ in range(args.per_n):
            c = random_clifford_t(n, int(rng.integers(5, 40)), 0.0, int(rng.integers(2**31)))
            pc = build_projector(generators(run_tableau(c)), n)
            depths.append(pc.logical_depth())
            ops.append(pc.controlled_ops)
        lo, hi = projector_depth_bounds(n)
        ok &= lo <= min(depths) and max(depths) <= hi
        print(f"{n},{min(depths)},{np.mean(depths):.3f},{max(depths)},{lo},{hi},{np.mean(ops):.3f}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
