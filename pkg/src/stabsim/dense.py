"""Brute-force statevector simulation, the slow reference for the tableau code.

Basis convention: qubit 0 is the most significant bit of the basis index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._rng import as_rng, random_bit
from .circuit import Circuit, GateKind
from .errors import CapacityError, InternalError, InvalidArgumentError

ORACLE_CAP = 12

_SQ2 = 1 / np.sqrt(2)
_I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA = {(0, 0): _I2, (1, 0): PAULI_X, (0, 1): PAULI_Z, (1, 1): PAULI_Y}

GATE_UNITARIES = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2,
    GateKind.S: np.diag([1, 1j]),
    GateKind.SDG: np.diag([1, -1j]),
    GateKind.X: PAULI_X,
    GateKind.Y: PAULI_Y,
    GateKind.Z: PAULI_Z,
    GateKind.CX: np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
    GateKind.SWAP: np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex),
}


@dataclass
class StateVector:
    n: int
    amp: np.ndarray

    def __post_init__(self):
        self.amp = np.asarray(self.amp, dtype=complex)
        if self.amp.shape != (1 << self.n,):
            raise InvalidArgumentError(f"expected {1 << self.n} amplitudes, got {self.amp.shape}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amp))


def _check_cap(n, cap):
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds the dense oracle cap of {cap}")


def pauli_matrix(x, z, r=0) -> np.ndarray:
    """Dense matrix of ``(-1)^r * kron_j sigma(x_j, z_j)``."""
    m = np.array([[1]], dtype=complex)
    for a, b in zip(x, z):
        m = np.kron(m, _SIGMA[int(a), int(b)])
    return -m if r else m


def gate_unitary(kind: GateKind) -> np.ndarray:
    return GATE_UNITARIES[GateKind(kind)]


def _apply_unitary(psi, u, qubits, n):
    k = len(qubits)
    psi = psi.reshape((2,) * n)
    psi = np.tensordot(u.reshape((2,) * (2 * k)), psi, axes=(list(range(k, 2 * k)), list(qubits)))
    return np.moveaxis(psi, list(range(k)), list(qubits)).reshape(-1)


def _measure(psi, q, n, rng, tol=1e-9):
    view = psi.reshape(1 << q, 2, -1)
    p1 = float(np.sum(np.abs(view[:, 1, :]) ** 2))
    if p1 < tol:
        outcome = 0
    elif p1 > 1 - tol:
        outcome = 1
    elif abs(p1 - 0.5) < tol:
        outcome = random_bit(rng)
    else:
        raise InternalError(f"outcome probability {p1} impossible for a Clifford circuit")
    view = view.copy()
    view[:, 1 - outcome, :] = 0
    view /= np.sqrt(p1 if outcome else 1 - p1)
    return view.reshape(-1), outcome


def dense_run(c: Circuit, rng=None, cap: int = ORACLE_CAP) -> tuple[StateVector, list[int]]:
    """Simulate ``c`` on the full statevector from ``|0...0>``.

    Random outcomes draw one bit from ``rng`` exactly like the tableau
    simulator, so both produce identical outcome streams for a shared seed.
    """
    _check_cap(c.n, cap)
    n = c.n
    psi = np.zeros(1 << n, dtype=complex)
    psi[0] = 1
    outcomes = []
    for g in c:
        if g.kind == GateKind.M:
            if rng is None:
                raise InvalidArgumentError("circuit measures but no rng was given")
            rng = as_rng(rng)
            psi, b = _measure(psi, g.qubits[0], n, rng)
            outcomes.append(b)
        else:
            psi = _apply_unitary(psi, GATE_UNITARIES[g.kind], g.qubits, n)
    return StateVector(n, psi), outcomes


def apply_pauli(row, amp: np.ndarray) -> np.ndarray:
    """Matrix-free ``P |amp>`` for a PauliRow, using sigma(x,z) = i^(xz) X^x Z^z."""
    n = row.n
    weights = 1 << np.arange(n - 1, -1, -1)
    xmask = int(np.dot(row.x.astype(np.int64), weights))
    zmask = int(np.dot(row.z.astype(np.int64), weights))
    idx = np.arange(1 << n)
    parity = np.bitwise_count(idx & zmask) & 1
    phase = (1j) ** int(np.sum(row.x & row.z)) * (-1) ** row.r
    out = np.empty_like(amp)
    out[idx ^ xmask] = phase * np.where(parity, -amp, amp)
    return out


def to_statevector(t, cap: int = ORACLE_CAP, tol: float = 1e-10) -> StateVector:
    """Reconstruct the state a tableau stabilizes.

    Projects a seed vector with ``(I + P_i)/2`` for each stabilizer in turn.
    If a projection annihilates the vector it lies entirely in the -1
    eigenspace of ``P_i``; applying destabilizer i (which anticommutes only
    with ``P_i``) moves it to the +1 eigenspace instead. The global phase is
    fixed by making the first nonzero amplitude real and positive.
    """
    n = t.n
    _check_cap(n, cap)
    v = np.zeros(1 << n, dtype=complex)
    v[0] = 1
    for i in range(n):
        stab = t.row(n + i)
        w = 0.5 * (v + apply_pauli(stab, v))
        if np.vdot(w, w).real <= tol * np.vdot(v, v).real:
            w = apply_pauli(t.row(i), v)
        v = w
    norm = np.linalg.norm(v)
    if norm <= tol:
        raise InternalError("stabilizer projector is zero; tableau is corrupt")
    v = v / norm
    lead = v[np.flatnonzero(np.abs(v) > 1e-8)[0]]
    v = v * (abs(lead) / lead)
    return StateVector(n, v)


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|^2``, clipped into [0, 1]."""
    if a.n != b.n:
        raise InvalidArgumentError(f"qubit counts differ: {a.n} vs {b.n}")
    return float(min(1.0, max(0.0, abs(np.vdot(a.amp, b.amp)) ** 2)))
