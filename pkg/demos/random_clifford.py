"""
Uniformly random Clifford operators
===================================

Sample Clifford operators, turn them into gate lists and check that the
sampler hits every one-qubit Clifford with equal frequency.
"""

from collections import Counter

import numpy as np

from stabsim import (
    canonical_key,
    clifford_group_order,
    is_symplectic,
    run_circuit,
    sample_clifford,
    serialize_circuit,
    synthesize_circuit,
)

rng = np.random.default_rng(3)

# A sample is a tableau (images of X_j and Z_j) plus the seed that reproduces it.
s = sample_clifford(3, rng)
print(s.tableau)
print("symplectic:", is_symplectic(s.tableau))
print("reproducible from seed:", sample_clifford(3, s.seed).tableau == s.tableau)

# Synthesis gives a circuit over H, S, CX and a final X/Z layer.
c = synthesize_circuit(s)
print(serialize_circuit(c))
print("gates:", len(c), "| prepares the tableau:", run_circuit(c)[0] == s.tableau)

# Gate counts grow roughly quadratically.
for n in (8, 16, 32, 64, 128):
    print(f"n={n:4d} gates={len(synthesize_circuit(sample_clifford(n, rng))):7d}")

# One qubit: 24 operators modulo phase, each drawn about equally often.
counts = Counter(canonical_key(sample_clifford(1, rng).tableau) for _ in range(24_000))
print("distinct:", len(counts), "of", clifford_group_order(1))
print("min/max count:", min(counts.values()), max(counts.values()))
