"""One-bit-per-entry tableau simulator.

Straight transcription of the row update rules with a uint8 per bit and no
packing, no kernels, no threads. It exists to be compared against the packed
simulator in :mod:`stabsim.tableau`.
"""

from __future__ import annotations

import numpy as np

from ._rng import random_bit
from .circuit import Circuit, GateKind
from .errors import InternalError, InvalidArgumentError
from .tableau import PauliRow


def _g(x1, z1, x2, z2):
    if x1 == 0 and z1 == 0:
        return 0
    if x1 == 1 and z1 == 1:
        return z2 - x2
    if x1 == 1:
        return z2 * (2 * x2 - 1)
    return x2 * (1 - 2 * z2)


class ReferenceTableau:
    """Rows ``0..n-1`` destabilizers, ``n..2n-1`` stabilizers, ``2n`` scratch."""

    def __init__(self, n: int):
        if n < 1:
            raise InvalidArgumentError(f"qubit count must be positive, got {n}")
        self.n = n
        self.x = np.zeros((2 * n + 1, n), dtype=np.uint8)
        self.z = np.zeros((2 * n + 1, n), dtype=np.uint8)
        self.r = np.zeros(2 * n + 1, dtype=np.uint8)
        for i in range(n):
            self.x[i, i] = 1
            self.z[n + i, i] = 1

    def row(self, i):
        return PauliRow(self.x[i], self.z[i], int(self.r[i]))

    def to_arrays(self):
        m = 2 * self.n
        return self.x[:m].copy(), self.z[:m].copy(), self.r[:m].copy()

    def h(self, q):
        for i in range(2 * self.n):
            self.r[i] ^= self.x[i, q] & self.z[i, q]
            self.x[i, q], self.z[i, q] = self.z[i, q], self.x[i, q]

    def s(self, q):
        for i in range(2 * self.n):
            self.r[i] ^= self.x[i, q] & self.z[i, q]
            self.z[i, q] ^= self.x[i, q]

    def cx(self, c, t):
        for i in range(2 * self.n):
            x, z = self.x[i], self.z[i]
            self.r[i] ^= x[c] & z[t] & (x[t] ^ z[c] ^ 1)
            x[t] ^= x[c]
            z[c] ^= z[t]

    def apply(self, kind, a, b=-1):
        kind = GateKind(kind)
        seq = {
            GateKind.H: [("h", a)],
            GateKind.S: [("s", a)],
            GateKind.SDG: [("s", a)] * 3,
            GateKind.Z: [("s", a)] * 2,
            GateKind.X: [("h", a), ("s", a), ("s", a), ("h", a)],
            GateKind.Y: [("s", a), ("s", a), ("h", a), ("s", a), ("s", a), ("h", a)],
            GateKind.CX: [("cx", a, b)],
            GateKind.CZ: [("h", b), ("cx", a, b), ("h", b)],
            GateKind.SWAP: [("cx", a, b), ("cx", b, a), ("cx", a, b)],
        }.get(kind)
        if seq is None:
            raise InvalidArgumentError("measurement must go through measure()")
        for name, *args in seq:
            getattr(self, name)(*args)

    def rowsum(self, h, i):
        m = 2 * int(self.r[h]) + 2 * int(self.r[i])
        for j in range(self.n):
            m += _g(int(self.x[i, j]), int(self.z[i, j]), int(self.x[h, j]), int(self.z[h, j]))
        m %= 4
        if m % 2:
            raise InternalError(f"rowsum({h}, {i}) produced an imaginary phase")
        self.r[h] = m // 2
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]

    def measure(self, q, rng):
        n = self.n
        ps = [p for p in range(n, 2 * n) if self.x[p, q]]
        if ps:
            p = ps[0]
            b = random_bit(rng)
            for i in range(2 * n):
                if i != p and i != p - n and self.x[i, q]:
                    self.rowsum(i, p)
            self.x[p - n], self.z[p - n], self.r[p - n] = self.x[p], self.z[p], self.r[p]
            self.x[p] = 0
            self.z[p] = 0
            self.z[p, q] = 1
            self.r[p] = b
            return b, False
        s = 2 * n
        self.x[s] = 0
        self.z[s] = 0
        self.r[s] = 0
        for d in range(n):
            if self.x[d, q]:
                self.rowsum(s, d + n)
        return int(self.r[s]), True


def reference_run(c: Circuit, rng=None) -> tuple[ReferenceTableau, list[int]]:
    t = ReferenceTableau(c.n)
    outcomes = []
    for kind, a, b in c.ops.tolist():
        if kind == GateKind.M:
            outcomes.append(t.measure(a, rng)[0])
        else:
            t.apply(kind, a, b)
    return t, outcomes
