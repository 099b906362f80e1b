"""Gate count of the Clifford part of left splits against n^2/log2(n), as CSV.

    python3 scripts/threshold_report.py --per-n 20 --qubits 2..8
"""
import argparse
import sys

import numpy as np

from cliffsplit import LEFT, random_clifford_t, split
from cliffsplit.cli import _int_range
from cliffsplit.projector import canonical_threshold, threshold_report_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--qubits", type=_int_range, default=(2, 8))
    ap.add_argument("--depth", type=_int_range, default=(20, 100))
    ap.add_argument("--tprob", type=float, default=0.2)
    ap.add_argument("--per-n", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    rows = []
    for n in range(max(2, args.qubits[0]), args.qubits[1] + 1):
        for _ in range(args.per_n):
            d = int(rng.integers(args.depth[0], args.depth[1] + 1))
            c = random_clifford_t(n, d, args.tprob, int(rng.integers(2**31)))
            rows.append((n, len(split(c, LEFT).clifford.gates)))
    sys.stdout.write(threshold_report_csv(rows))
    above = sum(count > canonical_threshold(n) for n, count in rows)
    print(f"# {above}/{len(rows)} Clifford parts above threshold", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
