"""
Bell pairs and GHZ states on the tableau
========================================

Prepare entangled states with Clifford gates, look at the stabilizer
generators, then sample measurement outcomes.
"""

import numpy as np

from stabsim import Circuit, GateKind, parse_circuit, run_circuit

# A Bell pair written in the text format. Comments and blank lines are ignored.
bell = parse_circuit("""
qubits 2
# entangle, then measure both qubits
h 0
cx 0 1
m 0
m 1
""")

# Before measuring, the state is fixed by +XX and +ZZ.
prep = Circuit(2, [g for g in bell if g.kind != GateKind.M])
tableau, _ = run_circuit(prep)
print("Bell stabilizers:", [str(p) for p in tableau.stabilizers()])

# The first measurement is a fair coin, the second just repeats it.
rng = np.random.default_rng(7)
shots = np.array([run_circuit(bell, rng)[1] for _ in range(2000)])
print("fraction of 11 outcomes:", shots[:, 0].mean())
print("all pairs equal:", bool((shots[:, 0] == shots[:, 1]).all()))

# The same story on three qubits.
n = 3
ghz = Circuit(n, [(GateKind.H, 0)] + [(GateKind.CX, q, q + 1) for q in range(n - 1)])
tableau, _ = run_circuit(ghz)
print("GHZ stabilizers:", [str(p) for p in tableau.stabilizers()])
print(tableau)
