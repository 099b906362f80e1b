"""Dense vs composite (tableau + dense remainder) timing sweep, as CSV.

    python3 scripts/bench.py --qubits 2..8 --depth 60 --seeds 5 --jobs 1
"""
import argparse
import sys

from cliffsplit.cli import _int_range, bench_csv, run_bench


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--qubits", type=_int_range, default=(2, 8))
    ap.add_argument("--depth", type=int, default=60)
    ap.add_argument("--tprob", type=float, default=0.2)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    records = run_bench(args.qubits, args.depth, args.tprob, args.seeds, args.seed, args.jobs)
    sys.stdout.write(bench_csv(records))
    return 0 if all(r.checks_passed for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
