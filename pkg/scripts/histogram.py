"""Depth-reduction histogram of a random Clifford+T corpus, as CSV.

    python3 scripts/histogram.py --count 500 --qubits 2..10 --depth 20..100
"""
import argparse
import sys

from cliffsplit.border import depth_reduction_histogram, histogram_csv
from cliffsplit.cli import RandomCorpus, _int_range


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--qubits", type=_int_range, default=(2, 10))
    ap.add_argument("--depth", type=_int_range, default=(20, 100))
    ap.add_argument("--tprob", type=float, default=0.2)
    ap.add_argument("--side", choices=["left", "right"], default="left")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    corpus = RandomCorpus(args.count, args.qubits, args.depth, args.tprob)
    counts = depth_reduction_histogram(corpus.circuits(args.seed), args.side)
    sys.stdout.write(histogram_csv(counts))
    mid = counts[1:9]
    print(f"# weakly decreasing over [10%,90%): {all(a >= b for a, b in zip(mid, mid[1:]))}",
          file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
