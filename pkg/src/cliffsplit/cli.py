"""Command-line front end: split, simulate, bench, histogram, vqe.

Exit status is 0 on success, 1 when the input is well formed but the operation
fails on it (non-Clifford gate under the tableau method, failed verification,
extraction failure), and 2 for usage problems: bad flags, unreadable files,
malformed configuration.  ``SEED`` in the environment overrides ``--seed``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from .border import LEFT, RIGHT, BorderError, bucket_of, histogram_csv, N_BUCKETS, split
from .circuit import CircuitError, depth, parse_qasm, random_clifford_t
from .densesim import (composite_simulate, overlap, simulate, state_to_json, unitary,
                       unitary_overlap, UNITARY_MAX_QUBITS)
from .pauli import PauliSum
from .stabilizer import StabilizerError, generators, run_tableau
from .vqe import BACKENDS, DENSE, Ansatz, VqeError, config_from_json_text, descend, VqeConfig
from .zx import ZXError

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2
BENCH_REPS = 7
CHECK_TOL = 1e-9


class UsageError(Exception):
    """Raised for problems the caller can fix by changing the command line or input files."""


@dataclass(frozen=True)
class BenchRecord:
    circuit_id: str
    n_qubits: int
    depth: int
    seed: int
    path: str
    wall_time: float
    wall_time_var: float
    depth_reduction: float
    checks_passed: bool

    def __post_init__(self):
        if not self.wall_time > 0:
            raise ValueError("wall_time must be positive")


BENCH_COLUMNS = [f.name for f in fields(BenchRecord)]

BENCH_HELP = f"""\
CSV columns: {','.join(BENCH_COLUMNS)}
  one row per (cell, seed, path) with path in Dense|Composite;
  wall_time is the mean over {BENCH_REPS} timed runs after one discarded warm-up,
  wall_time_var their sample variance (seconds^2);
  checks_passed is 1 when the composite state overlaps the dense one to 1e-9.
"""
HIST_HELP = """\
CSV columns: bucket,low_pct,high_pct,count
  bucket b counts circuits with depth(U_C)/depth(extracted) in [10b%, 10b+10%);
  100% falls in the last bucket.
Random corpus spec: random:count=500,qubits=2..10,depth=20..100,tprob=0.2
"""
VQE_HELP = """\
CSV columns: iter,loss,theta0,theta1,...
  row 0 holds the initial parameters; one row per gradient step after that.
Hamiltonian JSON: {"ZZ": 0.5, "XI": -0.3} or {"n_qubits": 2, "terms": [{"pauli": "ZZ", "coeff": 0.5}]}
Config JSON keys: step_size, max_iters, tol, gradient (parameter_shift|finite_difference), h
"""


# --------------------------------------------------------------------------- helpers

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _int_range(text: str) -> tuple[int, int]:
    """'a..b' or 'a' as an inclusive range."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a or a..b, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _seed_for(*parts: int) -> int:
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def _timed(fn, reps: int) -> tuple[float, float, object]:
    result = fn()  # warm-up, discarded
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    # a clock tick of zero on a trivial circuit would break the positivity invariant
    mean = max(statistics.fmean(times), 1e-9)
    return mean, statistics.variance(times) if reps > 1 else 0.0, result


# --------------------------------------------------------------------------- split

def cmd_split(args) -> int:
    c = parse_qasm(_read_text(args.input))
    r = split(c, args.side)
    if args.verify:
        if c.n_qubits > UNITARY_MAX_QUBITS:
            raise UsageError(f"--verify supports at most {UNITARY_MAX_QUBITS} qubits")
        ov = unitary_overlap(unitary(c), unitary(r.recomposed()))
        if ov < 1 - CHECK_TOL:
            print(f"verification failed: overlap {ov:.12f}", file=sys.stderr)
            return EXIT_DOMAIN
    summary = (f"side={r.side} depth_before={depth(c)} depth_extracted={depth(r.extracted)} "
               f"clifford_depth={depth(r.clifford)} non_clifford_depth={depth(r.non_clifford)} "
               f"reduction={100 * r.depth_reduction:.1f}%")
    if args.verify:
        summary += " verified=1"
    text = json.dumps(r.to_json(), indent=2) + "\n"
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        Path(args.out).write_text(text)
        print(summary)
    return EXIT_OK


# --------------------------------------------------------------------------- simulate

def cmd_simulate(args) -> int:
    c = parse_qasm(_read_text(args.input))
    if args.method == "tableau":
        if not c.is_clifford():
            bad = next(g for g in c.gates if not g.is_clifford())
            raise StabilizerError(f"tableau method needs a Clifford circuit; found {bad}")
        out = {"method": "tableau", "n_qubits": c.n_qubits,
               "generators": [str(g) for g in generators(run_tableau(c))]}
    else:
        state = simulate(c) if args.method == "dense" else composite_simulate(c)
        out = {"method": args.method, "n_qubits": c.n_qubits, "amplitudes": state_to_json(state)}
    _write(json.dumps(out) + "\n", args.out)
    return EXIT_OK


# --------------------------------------------------------------------------- bench

def _bench_cell(cell: tuple[int, int, float, int, int]) -> list[BenchRecord]:
    n, d, p, n_seeds, base = cell
    rows = []
    for k in range(n_seeds):
        seed = _seed_for(base, n, d, k)
        c = random_clifford_t(n, d, p, seed)
        cid = f"n{n}-d{d}-s{k}"
        t_dense, v_dense, psi = _timed(lambda: simulate(c), BENCH_REPS)
        t_comp, v_comp, phi = _timed(lambda: composite_simulate(c), BENCH_REPS)
        ok = overlap(psi, phi) >= 1 - CHECK_TOL
        red = split(c, LEFT).depth_reduction
        rows.append(BenchRecord(cid, n, d, seed, "Dense", t_dense, v_dense, red, ok))
        rows.append(BenchRecord(cid, n, d, seed, "Composite", t_comp, v_comp, red, ok))
    return rows


def bench_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for r in records:
        row = asdict(r)
        row["checks_passed"] = int(r.checks_passed)
        row["wall_time"] = f"{r.wall_time:.6e}"
        row["wall_time_var"] = f"{r.wall_time_var:.6e}"
        row["depth_reduction"] = f"{r.depth_reduction:.6f}"
        w.writerow([row[k] for k in BENCH_COLUMNS])
    return buf.getvalue()


def run_bench(qubits: tuple[int, int], depth_: int, tprob: float, seeds: int, seed: int,
              jobs: int = 1) -> list[BenchRecord]:
    cells = [(n, depth_, tprob, seeds, seed) for n in range(qubits[0], qubits[1] + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_cell = list(pool.map(_bench_cell, cells))
    else:
        per_cell = [_bench_cell(cell) for cell in cells]
    return [r for rows in per_cell for r in rows]


def cmd_bench(args) -> int:
    if args.qubits[0] < 1 or args.depth < 1 or args.seeds < 1 or args.jobs < 1:
        raise UsageError("--qubits, --depth, --seeds and --jobs must be positive")
    if not 0 <= args.tprob <= 1:
        raise UsageError("--tprob must lie in [0, 1]")
    records = run_bench(args.qubits, args.depth, args.tprob, args.seeds, args.seed, args.jobs)
    _write(bench_csv(records), args.out)
    failed = sum(not r.checks_passed for r in records)
    if failed:
        print(f"{failed // 2} circuit(s) failed the equivalence check", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


# --------------------------------------------------------------------------- histogram

@dataclass(frozen=True)
class RandomCorpus:
    count: int = 500
    qubits: tuple[int, int] = (2, 10)
    depth: tuple[int, int] = (20, 100)
    tprob: float = 0.2

    @classmethod
    def parse(cls, text: str) -> RandomCorpus:
        body = text[len("random"):].lstrip(":")
        kw: dict = {}
        for item in filter(None, body.split(",")):
            key, _, val = item.partition("=")
            key = key.strip()
            try:
                if key == "count":
                    kw[key] = int(val)
                elif key in ("qubits", "depth"):
                    kw[key] = _int_range(val.strip())
                elif key == "tprob":
                    kw[key] = float(val)
                else:
                    raise UsageError(f"unknown corpus key {key!r}")
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"bad corpus value for {key}: {exc}") from None
        spec = cls(**kw)
        if spec.count < 1 or spec.qubits[0] < 1 or spec.depth[0] < 1 or not 0 <= spec.tprob <= 1:
            raise UsageError(f"corpus spec out of range: {text!r}")
        return spec

    def circuits(self, seed: int):
        rng = np.random.default_rng(seed)
        for _ in range(self.count):
            n = int(rng.integers(self.qubits[0], self.qubits[1] + 1))
            d = int(rng.integers(self.depth[0], self.depth[1] + 1))
            yield random_clifford_t(n, d, self.tprob, int(rng.integers(2**31)))


def _corpus(spec: str, seed: int):
    if spec.startswith("random"):
        return RandomCorpus.parse(spec).circuits(seed)
    root = Path(spec)
    if not root.is_dir():
        raise UsageError(f"corpus {spec!r} is neither a directory nor a random: spec")
    files = sorted(root.glob("*.qasm"))
    if not files:
        raise UsageError(f"no .qasm files in {spec}")
    return (parse_qasm(f.read_text()) for f in files)


def cmd_histogram(args) -> int:
    counts = [0] * N_BUCKETS
    for c in _corpus(args.corpus, args.seed):
        r = split(c, args.side)
        counts[bucket_of(depth(r.clifford), depth(r.extracted))] += 1
    _write(histogram_csv(counts), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------- vqe

def cmd_vqe(args) -> int:
    try:
        obs = PauliSum.from_json(_read_json(args.hamiltonian))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad Hamiltonian file: {exc}") from None
    cfg = config_from_json_text(_read_text(args.config)) if args.config else VqeConfig()
    ansatz, init = Ansatz.from_circuit(parse_qasm(_read_text(args.ansatz)))
    if ansatz.template.n_qubits != obs.n:
        raise UsageError(f"ansatz has {ansatz.template.n_qubits} qubits, Hamiltonian {obs.n}")
    if ansatz.parameter_count == 0:
        print("cliffsplit: ansatz has no non-Clifford rotation to optimize", file=sys.stderr)
        return EXIT_DOMAIN
    if args.init == "zeros":
        init = np.zeros(ansatz.parameter_count)
    elif args.init == "random":
        init = np.random.default_rng(args.seed).uniform(-np.pi, np.pi, ansatz.parameter_count)
    trace = descend(ansatz, obs, cfg, init, args.backend)
    _write(trace.to_csv(), args.out)
    print(f"backend={args.backend} iterations={len(trace.losses) - 1} final_loss={trace.final_loss:.12f} "
          f"converged={int(trace.converged)}", file=sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffsplit", description=__doc__.split("\n")[0])
    p.add_argument("--seed", type=int, default=0, help="base seed (SEED env var takes precedence)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    raw = argparse.RawDescriptionHelpFormatter

    s = sub.add_parser("split", help="split a QASM circuit at its Clifford border")
    s.add_argument("input")
    s.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    s.add_argument("--out", help="JSON output path (default stdout, summary then goes to stderr)")
    s.add_argument("--verify", action="store_true", help="check the recomposed unitary (n <= 6)")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("simulate", help="statevector or stabilizer generators of a QASM circuit")
    s.add_argument("input")
    s.add_argument("--method", choices=("dense", "composite", "tableau"), default="dense")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bench", help="dense vs composite timing", epilog=BENCH_HELP, formatter_class=raw)
    s.add_argument("--qubits", type=_int_range, default=(2, 4), help="inclusive range a..b")
    s.add_argument("--depth", type=int, default=40)
    s.add_argument("--tprob", type=float, default=0.2)
    s.add_argument("--seeds", type=int, default=5, help="circuits per cell")
    s.add_argument("--jobs", type=int, default=1, help="worker processes, one cell each")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("histogram", help="depth-reduction counts per decile", epilog=HIST_HELP,
                       formatter_class=raw)
    s.add_argument("--corpus", required=True, help="directory of .qasm files or random:... spec")
    s.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    s.add_argument("--out")
    s.set_defaults(func=cmd_histogram)

    s = sub.add_parser("vqe", help="gradient-descent VQE", epilog=VQE_HELP, formatter_class=raw)
    s.add_argument("--hamiltonian", required=True)
    s.add_argument("--ansatz", required=True, help="QASM; T and non-Clifford rz become parameters")
    s.add_argument("--backend", choices=BACKENDS, default=DENSE)
    s.add_argument("--config")
    s.add_argument("--init", choices=("circuit", "zeros", "random"), default="circuit",
                   help="start from the file's angles, zeros, or uniform angles drawn from --seed")
    s.add_argument("--out")
    s.set_defaults(func=cmd_vqe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    env = os.environ.get("SEED")
    if env is not None:
        try:
            args.seed = int(env)
        except ValueError:
            print(f"cliffsplit: error: SEED must be an integer, got {env!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, VqeError) as exc:
        # VqeError covers configuration validation, which is a usage problem
        print(f"cliffsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CircuitError, StabilizerError, BorderError, ZXError, ValueError) as exc:
        print(f"cliffsplit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
