"""
Cross-checking against a dense statevector
==========================================

For small n the tableau can be turned back into a 2^n amplitude vector and
compared with a plain matrix simulation of the same circuit.
"""

import numpy as np

from stabsim import Circuit, GateKind, dense_run, fidelity, random_circuit, run_circuit, to_statevector
from stabsim.verify import format_report, verify

rng = np.random.default_rng(11)

c = random_circuit(4, rng)
tableau, _ = run_circuit(c)
psi_tab = to_statevector(tableau)
psi_dense, _ = dense_run(c)
print("fidelity:", fidelity(psi_tab, psi_dense))
print(np.round(psi_tab.amp, 3))

# Circuits with measurements: both simulators draw their coin flips from the
# same seeded stream, so the outcome bits line up exactly.
c = Circuit(
    3,
    [(GateKind.H, 0), (GateKind.CX, 0, 1), (GateKind.H, 2), (GateKind.M, 0), (GateKind.M, 2), (GateKind.M, 1)],
)
print("tableau:", run_circuit(c, 5)[1], "dense:", dense_run(c, 5)[1])

# The same suite as ``stab verify``, smaller.
print(format_report(verify(max_n=5, trials=50, seed=1, uniformity_samples=4800)))
