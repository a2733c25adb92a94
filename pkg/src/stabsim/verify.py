"""Oracle cross-check and uniformity suite behind ``stab verify``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.stats import chisquare

from .circuit import Circuit, serialize_circuit
from .dense import ORACLE_CAP, dense_run, fidelity, to_statevector
from .errors import CapacityError
from .random_clifford import canonical_key, clifford_group_order, random_circuit, sample_clifford
from .tableau import run_circuit

FIDELITY_TOL = 1e-10
ALPHA = 1e-3


@dataclass
class VerifyReport:
    passed: bool = True
    lines: list[str] = field(default_factory=list)
    failing_circuit: Circuit | None = None

    def fail(self, msg, circuit=None):
        self.passed = False
        self.lines.append("FAIL " + msg)
        if circuit is not None and self.failing_circuit is None:
            self.failing_circuit = circuit

    def ok(self, msg):
        self.lines.append("ok   " + msg)


def _tableau_sim(c):
    return run_circuit(c)[0]


def check_oracle(max_n, trials, rng, simulate, report):
    for n in range(1, max_n + 1):
        worst = 1.0
        for _ in range(trials):
            c = random_circuit(n, rng)
            f = fidelity(dense_run(c)[0], to_statevector(simulate(c)))
            worst = min(worst, f)
            if f < 1 - FIDELITY_TOL:
                report.fail(f"oracle n={n}: fidelity {f:.12f} < 1 - {FIDELITY_TOL:g}", c)
                return
        report.ok(f"oracle n={n}: {trials} circuits, min fidelity {worst:.15f}")


def uniformity_pvalue(n: int, samples: int, rng) -> tuple[float, int]:
    """Chi-square p-value of sampled Clifford frequencies over the whole group.

    Classes never observed count as zeros. Returns ``(p, distinct_seen)``.
    """
    counts = Counter(canonical_key(sample_clifford(n, rng).tableau) for _ in range(samples))
    order = clifford_group_order(n)
    observed = np.zeros(order)
    observed[: len(counts)] = sorted(counts.values())
    return float(chisquare(observed).pvalue), len(counts)


def check_uniformity(samples, rng, report):
    p, seen = uniformity_pvalue(1, samples, rng)
    if seen != 24:
        report.fail(f"uniformity n=1: {seen} distinct operators, expected 24")
    elif p <= ALPHA:
        report.fail(f"uniformity n=1: chi-square p={p:.4g} <= {ALPHA:g}")
    else:
        report.ok(f"uniformity n=1: {samples} samples, 24 classes, p={p:.4g}")


def verify(
    max_n: int = 8,
    trials: int = 200,
    seed: int = 0,
    simulate: Callable[[Circuit], object] | None = None,
    uniformity_samples: int = 48_000,
) -> VerifyReport:
    """Run the oracle-equivalence and n=1 uniformity checks.

    ``simulate`` maps a circuit to its final tableau (anything with ``n`` and
    ``row(i)``); it defaults to the packed simulator and exists so a
    deliberately broken simulator can be shown to fail.
    """
    if max_n > ORACLE_CAP:
        raise CapacityError(f"max_n={max_n} exceeds the dense oracle cap of {ORACLE_CAP}")
    if max_n < 1 or trials < 1:
        raise ValueError("max_n and trials must be positive")
    rng = np.random.default_rng(seed)
    report = VerifyReport()
    check_oracle(max_n, trials, rng, simulate or _tableau_sim, report)
    if uniformity_samples:
        check_uniformity(uniformity_samples, rng, report)
    return report


def format_report(report: VerifyReport) -> str:
    out = list(report.lines)
    if report.failing_circuit is not None:
        out.append("first failing circuit:")
        out.append(serialize_circuit(report.failing_circuit).rstrip("\n"))
    out.append("PASS" if report.passed else "FAIL")
    return "\n".join(out)
