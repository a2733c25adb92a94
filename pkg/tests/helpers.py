"""Independent oracles and test doubles shared by the test modules."""

import itertools

import numpy as np

from stabsim.circuit import Circuit, GateKind
from stabsim.dense import pauli_matrix


class FixedBits:
    """Stand-in random source that hands out a scripted bit sequence."""

    def __init__(self, *bits):
        self.bits = list(bits)
        self.used = 0

    def integers(self, *args, **kwargs):
        self.used += 1
        return self.bits.pop(0)


def signed_paulis(n):
    """All 2 * 4^n signed Pauli strings on n qubits as (x, z, r) tuples."""
    for bits in itertools.product((0, 1), repeat=2 * n + 1):
        yield np.array(bits[:n], np.uint8), np.array(bits[n : 2 * n], np.uint8), bits[-1]


def identify_pauli(mat, n):
    """Return (x, z, r) with pauli_matrix(x, z, r) == mat, or None."""
    for x, z, r in signed_paulis(n):
        if np.allclose(pauli_matrix(x, z, r), mat, atol=1e-12):
            return x, z, r
    return None


def random_circuit_ops(rng, n, length, measure=True):
    """Uniformly chosen gates (optionally with measurements) as a Circuit."""
    kinds = [k for k in GateKind if measure or k != GateKind.M]
    if n == 1:
        kinds = [k for k in kinds if k.arity == 1]
    gates = []
    for _ in range(length):
        k = kinds[rng.integers(len(kinds))]
        if k.arity == 2:
            a, b = rng.choice(n, size=2, replace=False)
            gates.append((k, int(a), int(b)))
        else:
            gates.append((k, int(rng.integers(n))))
    return Circuit(n, gates)


def conjugation_mismatches(kinds=None):
    """Compare tableau row updates with U P U^dagger for every signed Pauli.

    Two-qubit gates are checked in both qubit orders. Returns the list of
    (kind, qubits, input, got, expected) mismatches and the number of checks.
    """
    from stabsim.dense import gate_unitary
    from stabsim.tableau import PauliRow, apply_gate, new_identity
    from stabsim.circuit import CliffordGate

    kinds = kinds or [k for k in GateKind if k != GateKind.M]
    bad, checks = [], 0
    for kind in kinds:
        u = gate_unitary(kind)
        orders = [(0,)] if kind.arity == 1 else [(0, 1), (1, 0)]
        for qubits in orders:
            n = kind.arity
            # (1, 0) on a gate means the same matrix with the qubits swapped.
            perm = np.eye(4)[[0, 2, 1, 3]] if qubits == (1, 0) else np.eye(2**n)
            uq = perm @ u @ perm
            for x, z, r in signed_paulis(n):
                t = new_identity(n)
                t.set_row(0, PauliRow(x, z, r))
                apply_gate(t, CliffordGate(kind, qubits))
                got = t.row(0)
                ex, ez, er = identify_pauli(uq @ pauli_matrix(x, z, r) @ uq.conj().T, n)
                checks += 1
                if got != PauliRow(ex, ez, er):
                    bad.append((kind, qubits, PauliRow(x, z, r), got, PauliRow(ex, ez, er)))
    return bad, checks
