"""Runtime-vs-qubit-count benchmark over uniformly random Clifford circuits.

Each record times one measurement-free random circuit. Circuit generation is
never timed; tableau allocation is timed only with ``include_alloc``.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .random_clifford import random_circuit
from .tableau import execute, new_identity

CSV_HEADER = ["n", "circuit_index", "seed", "gate_count", "wall_time_ns", "include_alloc", "threads"]


def ladder(lo: int = 8, hi: int = 1024, factor: int = 2) -> list[int]:
    if lo < 1 or factor < 2 or hi < lo:
        raise ValueError(f"bad ladder lo={lo} hi={hi} factor={factor}")
    out = []
    n = lo
    while n <= hi:
        out.append(n)
        n *= factor
    return out


@dataclass
class BenchConfig:
    qubits: list[int] = field(default_factory=ladder)
    reps: int = 100
    seed: int = 0
    threads: int = 1
    include_alloc: bool = False
    out: Path | None = None

    def __post_init__(self):
        self.qubits = [int(q) for q in self.qubits]
        if not self.qubits:
            raise ValueError("qubit list is empty")
        if any(a >= b for a, b in zip(self.qubits, self.qubits[1:])):
            raise ValueError(f"qubit list must be strictly ascending: {self.qubits}")
        if self.qubits[0] < 1:
            raise ValueError("qubit counts must be positive")
        if self.reps < 1 or self.threads < 1:
            raise ValueError("reps and threads must be positive")


@dataclass(frozen=True)
class BenchmarkRecord:
    n: int
    circuit_index: int
    seed: int
    gate_count: int
    wall_time_ns: int
    include_alloc: bool
    threads: int

    def as_row(self) -> list[str]:
        row = asdict(self)
        row["include_alloc"] = int(self.include_alloc)
        return [str(row[k]) for k in CSV_HEADER]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> BenchmarkRecord:
        rec = cls(
            n=int(row["n"]),
            circuit_index=int(row["circuit_index"]),
            seed=int(row["seed"]),
            gate_count=int(row["gate_count"]),
            wall_time_ns=int(row["wall_time_ns"]),
            include_alloc=row["include_alloc"] in ("1", "true", "True"),
            threads=int(row["threads"]),
        )
        if rec.wall_time_ns <= 0:
            raise ValueError(f"non-positive wall time in {row}")
        return rec


def circuit_seed(base: int, n: int, index: int) -> int:
    """64-bit seed of circuit ``index`` at size ``n``; independent of the ladder."""
    return int(np.random.SeedSequence([base, n, index]).generate_state(1, np.uint64)[0])


def _time_one(circuit, include_alloc, threads):
    if include_alloc:
        start = time.perf_counter_ns()
        t = new_identity(circuit.n)
        execute(t, circuit, threads=threads)
    else:
        t = new_identity(circuit.n)
        start = time.perf_counter_ns()
        execute(t, circuit, threads=threads)
    return max(1, time.perf_counter_ns() - start)


def iter_bench(cfg: BenchConfig) -> Iterable[BenchmarkRecord]:
    """Yield one record per (n, rep), sizes in ladder order, reps sequential."""
    for n in cfg.qubits:
        for i in range(cfg.reps):
            seed = circuit_seed(cfg.seed, n, i)
            circuit = random_circuit(n, seed)
            if i == 0:
                _time_one(circuit, cfg.include_alloc, cfg.threads)  # warmup, discarded
            ns = _time_one(circuit, cfg.include_alloc, cfg.threads)
            yield BenchmarkRecord(n, i, seed, len(circuit), ns, cfg.include_alloc, cfg.threads)


def write_records(records: Iterable[BenchmarkRecord], fh: TextIO) -> list[BenchmarkRecord]:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    kept = []
    for rec in records:
        w.writerow(rec.as_row())
        fh.flush()
        kept.append(rec)
    return kept


def read_records(path) -> list[BenchmarkRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [BenchmarkRecord.from_row(row) for row in reader]


def run_bench(cfg: BenchConfig) -> list[BenchmarkRecord]:
    """Run the benchmark; writes CSV to ``cfg.out`` when set."""
    if cfg.out is None:
        return list(iter_bench(cfg))
    with open(cfg.out, "w", newline="") as fh:
        return write_records(iter_bench(cfg), fh)


@dataclass(frozen=True)
class SizeSummary:
    n: int
    reps: int
    mean_ns: float
    std_ns: float
    mean_gates: float


def summarize(records: Iterable[BenchmarkRecord]) -> list[SizeSummary]:
    by_n: dict[int, list[BenchmarkRecord]] = {}
    for rec in records:
        by_n.setdefault(rec.n, []).append(rec)
    out = []
    for n in sorted(by_n):
        times = [r.wall_time_ns for r in by_n[n]]
        out.append(
            SizeSummary(
                n=n,
                reps=len(times),
                mean_ns=statistics.fmean(times),
                std_ns=statistics.stdev(times) if len(times) > 1 else 0.0,
                mean_gates=statistics.fmean(r.gate_count for r in by_n[n]),
            )
        )
    return out


def format_summary(summary: list[SizeSummary]) -> str:
    lines = [f"{'n':>6} {'reps':>5} {'mean_ms':>12} {'std_ms':>12} {'gates':>12} {'ratio':>7}"]
    prev = None
    for s in summary:
        ratio = f"{s.mean_ns / prev:7.2f}" if prev else f"{'-':>7}"
        lines.append(
            f"{s.n:>6} {s.reps:>5} {s.mean_ns / 1e6:>12.4f} {s.std_ns / 1e6:>12.4f} {s.mean_gates:>12.0f} {ratio}"
        )
        prev = s.mean_ns
    return "\n".join(lines)

