"""``stab`` command line: bench, run, sample, verify.

Exit codes: 0 success, 1 verification/validation failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import bench as B
from .circuit import parse_circuit, serialize_circuit
from .errors import CapacityError, CircuitError, StabError
from .random_clifford import random_circuit
from .tableau import run_circuit
from .verify import format_report, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stab", description="Clifford circuit simulation on the stabilizer tableau.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bench", help="time random Clifford circuits across qubit counts, write CSV")
    b.add_argument("--qubits", type=_int_list, help="comma-separated qubit counts, ascending")
    b.add_argument("--min", type=int, default=8)
    b.add_argument("--max", type=int, default=1024)
    b.add_argument("--factor", type=int, default=2)
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--include-alloc", action="store_true")
    b.add_argument("--out", type=Path, required=True)

    r = sub.add_parser("run", help="execute a circuit file")
    r.add_argument("file", type=Path)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--shots", type=int, default=1)

    s = sub.add_parser("sample", help="write a uniformly random Clifford circuit")
    s.add_argument("--qubits", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", type=Path, required=True)

    v = sub.add_parser("verify", help="cross-check against the dense oracle and test uniformity")
    v.add_argument("--max-n", type=int, default=8)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    return p


def cmd_bench(args) -> int:
    try:
        qubits = args.qubits or B.ladder(args.min, args.max, args.factor)
        cfg = B.BenchConfig(
            qubits=qubits,
            reps=args.reps,
            seed=args.seed,
            threads=args.threads,
            include_alloc=args.include_alloc,
            out=args.out,
        )
    except ValueError as exc:
        print(f"stab bench: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        fh = open(cfg.out, "w", newline="")
    except OSError as exc:
        print(f"stab bench: cannot write {cfg.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        with fh:
            records = B.write_records(B.iter_bench(cfg), fh)
    except StabError as exc:
        print(f"stab bench: simulation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(B.format_summary(B.summarize(records)))
    return EXIT_OK


def cmd_run(args) -> int:
    if args.shots < 1:
        print("stab run: --shots must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        data = args.file.read_bytes()
    except OSError as exc:
        print(f"stab run: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        circuit = parse_circuit(data)
    except CircuitError as exc:
        print(f"stab run: {args.file}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rng = np.random.default_rng(args.seed)
    tableau = None
    for shot in range(args.shots):
        tableau, outcomes = run_circuit(circuit, rng)
        print(f"shot {shot}: {''.join(map(str, outcomes))}")
    print("stabilizers:")
    for row in tableau.stabilizers():
        print(f"  {row}")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.qubits < 1:
        print("stab sample: --qubits must be positive", file=sys.stderr)
        return EXIT_USAGE
    text = serialize_circuit(random_circuit(args.qubits, args.seed))
    try:
        args.out.write_text(text, newline="\n")
    except OSError as exc:
        print(f"stab sample: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = verify(args.max_n, args.trials, args.seed)
    except (CapacityError, ValueError) as exc:
        print(f"stab verify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(format_report(report))
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"bench": cmd_bench, "run": cmd_run, "sample": cmd_sample, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
