"""
Runtime versus qubit count
==========================

Time random measurement-free Clifford circuits across a ladder of sizes. The
full default run (8..1024 qubits, 100 circuits each) takes a few minutes; the
ladder below is shorter. ``stab bench`` does the same and writes CSV.
"""

import numpy as np

from stabsim.bench import BenchConfig, format_summary, run_bench, summarize

records = run_bench(BenchConfig(qubits=[16, 32, 64, 128, 256, 512], reps=10, seed=0))
summary = summarize(records)
print(format_summary(summary))

# Random Clifford circuits have O(n^2) gates and each gate touches O(n) bits,
# packed 64 to a word. At these sizes a gate costs only a handful of words, so
# the total grows close to n^2 and bends towards n^3 as n grows.
n = np.array([s.n for s in summary], dtype=float)
t = np.array([s.mean_ns for s in summary])
slope = np.polyfit(np.log(n[-3:]), np.log(t[-3:]), 1)[0]
print(f"fitted exponent over the last three sizes: {slope:.2f}")
